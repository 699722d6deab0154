#pragma once

#include "zetaglue/numerics.hpp"

namespace zetaglue {

// Exponential integral E1(w) for complex w with Re w > 0 (principal branch).
Complex expint_e1(Complex w);

// Upper incomplete gamma Gamma(a, w), real order a (not a nonpositive
// integer unless a == 0), complex w with Re w > 0.
Complex upper_gamma(double a, Complex w);

// Mellin kernel g(a, z) = int_0^1 r^{a-1} e^{-rz} dr = z^{-a} gamma(a, z).
// Meromorphic in a with simple poles at a = 0, -1, -2, ...; this entry point
// is for regular a only.
Complex mellin_g(double a, Complex z);

// Pole data of a -> g(a, z) at a = -n0 (n0 >= 0):
//   residue      = (-z)^{n0} / n0!
//   regular_part = lim_{a -> -n0} [ g(a, z) - residue/(a + n0) ]
struct MellinPole {
    Complex residue;
    Complex regular_part;
};
MellinPole mellin_g_pole(int n0, Complex z);

// True if a sits (up to rounding slack) on the pole set {0, -1, -2, ...}.
bool is_nonpositive_integer(double a, int* n0 = nullptr);

// log Gamma(w) for complex w with Re w > 0, principal branch (test oracles
// use the Stirling form; this one is a Lanczos fit good to ~1e-13).
Complex log_gamma(Complex w);

}  // namespace zetaglue
