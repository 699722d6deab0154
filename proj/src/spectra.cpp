#include "zetaglue/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zetaglue {

namespace {

constexpr double kMergeTol = 1e-12;

// exp(w) - 1 without cancellation for small |w|.
Complex expm1c(Complex w) {
    if (std::abs(w) > 1e-4) return std::exp(w) - 1.0;
    return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0)));
}

// B_n / n! via zeta(n): stable at large n where the raw recurrence is not.
double bernoulli_over_factorial(int n) {
    if (n == 0) return 1.0;
    if (n == 1) return -0.5;
    if (n % 2 == 1) return 0.0;
    int m = n / 2;
    // zeta(n) by direct sum with Euler-Maclaurin corrections at K
    const double K = 50.0;
    double zeta_n = 0.0;
    for (int k = 1; k < 50; ++k) zeta_n += std::pow(static_cast<double>(k), -n);
    double nn = n;
    zeta_n += std::pow(K, 1.0 - nn) / (nn - 1.0) + 0.5 * std::pow(K, -nn) +
              nn / 12.0 * std::pow(K, -nn - 1.0) -
              nn * (nn + 1.0) * (nn + 2.0) / 720.0 * std::pow(K, -nn - 3.0);
    double sign = (m % 2 == 0) ? -1.0 : 1.0;
    return sign * 2.0 * zeta_n * std::pow(2.0 * M_PI, -n);
}

void push_merged(std::vector<EigenEntry>& v, double lambda, int mult) {
    if (!v.empty() && std::abs(v.back().lambda - lambda) <= kMergeTol * std::max(1.0, lambda)) {
        v.back().multiplicity += mult;
    } else {
        v.push_back({lambda, mult});
    }
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

CrossSection CrossSection::point() {
    CrossSection c;
    c.kind_ = Kind::point;
    c.dim_y_ = 0;
    return c;
}

CrossSection CrossSection::circle(double circumference, double holonomy) {
    if (circumference <= 0.0) throw std::invalid_argument("circle: circumference must be positive");
    if (holonomy < 0.0 || holonomy >= 1.0) throw std::invalid_argument("circle: holonomy in [0,1)");
    CrossSection c;
    c.kind_ = Kind::circle;
    c.dim_y_ = 1;
    c.circumference_ = circumference;
    c.holonomy_ = holonomy;
    return c;
}

CrossSection CrossSection::shifted_integers(double beta) {
    if (beta <= 0.0) throw std::invalid_argument("shifted_integers: beta must be positive");
    CrossSection c;
    c.kind_ = Kind::shifted_integers;
    c.dim_y_ = 2;  // formal dimension labels the integer exponent grid
    c.beta_ = beta;
    // c_j = B_j(1-beta)/j! from the Cauchy product of e^{(1-beta)w} with w/(e^w-1)
    double a = 1.0 - beta;
    c.bernoulli_coeffs_.resize(57);
    std::vector<double> apow(57, 1.0);
    for (int j = 1; j < 57; ++j) apow[j] = apow[j - 1] * a / j;  // a^j / j!
    for (int j = 0; j < 57; ++j) {
        KahanSum<double> s;
        for (int i = 0; i <= j; ++i) s.add(bernoulli_over_factorial(i) * apow[j - i]);
        c.bernoulli_coeffs_[j] = s.value();
    }
    return c;
}

CrossSection CrossSection::finite_list(std::vector<EigenEntry> entries, int formal_dim) {
    std::sort(entries.begin(), entries.end(),
              [](const EigenEntry& x, const EigenEntry& y) { return x.lambda < y.lambda; });
    for (const auto& e : entries) {
        if (e.lambda < 0.0) throw std::invalid_argument("finite_list: negative eigenvalue");
        if (e.multiplicity < 1) throw std::invalid_argument("finite_list: multiplicity < 1");
    }
    std::vector<EigenEntry> merged;
    for (const auto& e : entries) push_merged(merged, e.lambda, e.multiplicity);
    CrossSection c;
    c.kind_ = Kind::finite_list;
    c.dim_y_ = formal_dim;
    c.listed_ = std::move(merged);
    return c;
}

CrossSection CrossSection::form_graded(const CrossSection& base, int degree) {
    if (degree < 0 || degree > base.dim_y_) return empty_bundle(base.dim_y_);
    return base;
}

CrossSection CrossSection::empty_bundle(int formal_dim) {
    CrossSection c;
    c.kind_ = Kind::empty;
    c.dim_y_ = formal_dim;
    return c;
}

bool CrossSection::finitely_enumerable() const {
    return kind_ == Kind::point || kind_ == Kind::finite_list || kind_ == Kind::empty;
}

std::vector<EigenEntry> CrossSection::complete_spectrum() const {
    switch (kind_) {
        case Kind::point: return {{0.0, 1}};
        case Kind::finite_list: return listed_;
        case Kind::empty: return {};
        default:
            throw std::logic_error("complete_spectrum: spectrum is not finitely listed");
    }
}

int CrossSection::kernel_dim() const {
    switch (kind_) {
        case Kind::point: return 1;
        case Kind::circle: return holonomy_ == 0.0 ? 1 : 0;
        case Kind::shifted_integers: return 0;
        case Kind::finite_list: {
            int k = 0;
            for (const auto& e : listed_)
                if (e.lambda <= kMergeTol) k += e.multiplicity;
            return k;
        }
        case Kind::empty: return 0;
    }
    return 0;
}

EigenvalueStream CrossSection::enumerate(double cutoff) const {
    if (cutoff < 0.0) throw std::invalid_argument("enumerate: cutoff must be nonnegative");
    EigenvalueStream out;
    out.cutoff = cutoff;
    switch (kind_) {
        case Kind::point:
            out.entries.push_back({0.0, 1});
            break;
        case Kind::circle: {
            double base = 2.0 * M_PI / circumference_;
            if (holonomy_ == 0.0) {
                out.entries.push_back({0.0, 1});
                for (int n = 1;; ++n) {
                    double lam = base * n * base * n;
                    if (lam > cutoff) break;
                    out.entries.push_back({lam, 2});
                }
            } else {
                // two ascending families (n+alpha), (m+1-alpha); merge-sort
                double up = holonomy_, down = 1.0 - holonomy_;
                int n = 0, m = 0;
                while (true) {
                    double lu = base * (n + up) * base * (n + up);
                    double ld = base * (m + down) * base * (m + down);
                    if (lu > cutoff && ld > cutoff) break;
                    if (lu <= ld) {
                        if (lu > cutoff) break;
                        push_merged(out.entries, lu, 1);
                        ++n;
                    } else {
                        if (ld > cutoff) break;
                        push_merged(out.entries, ld, 1);
                        ++m;
                    }
                }
            }
            break;
        }
        case Kind::shifted_integers:
            for (int n = 0;; ++n) {
                double lam = n + beta_;
                if (lam > cutoff) break;
                out.entries.push_back({lam, 1});
            }
            break;
        case Kind::finite_list: {
            if (!listed_.empty() && cutoff > listed_.back().lambda)
                throw std::invalid_argument(
                    "enumerate: finite explicit list cannot certify exhaustiveness beyond its "
                    "largest eigenvalue");
            for (const auto& e : listed_)
                if (e.lambda <= cutoff) out.entries.push_back(e);
            break;
        }
        case Kind::empty:
            break;
    }
    return out;
}

double CrossSection::heat_trace(double r) const {
    if (r <= 0.0) throw std::invalid_argument("heat_trace: r must be positive");
    return heat_theta(Complex(r, 0.0)).real();
}

Complex CrossSection::heat_theta(Complex w) const {
    switch (kind_) {
        case Kind::point:
            return 1.0;
        case Kind::circle: {
            double l = circumference_;
            double base = 2.0 * M_PI / l;
            double e_dual = (1.0 / w).real() * l * l / 4.0;
            double e_dir = w.real() * base * base;
            if (e_dual >= e_dir) {
                // Jacobi transform: (l / (2 sqrt(pi w))) Sum_m e^{-m^2 l^2/(4w)} e^{2 pi i m alpha}
                Complex s = 1.0;
                for (int m = 1; m < 400; ++m) {
                    Complex t = std::exp(-(static_cast<double>(m) * m) * l * l / (4.0 * w));
                    if (std::abs(t) < 1e-22) break;
                    s += 2.0 * std::cos(2.0 * M_PI * m * holonomy_) * t;
                }
                return l / (2.0 * std::sqrt(M_PI)) * std::exp(-0.5 * std::log(w)) * s;
            }
            KahanSum<Complex> s;
            if (holonomy_ == 0.0) {
                s.add(1.0);
                for (int n = 1; n < 100000; ++n) {
                    Complex t = std::exp(-w * (base * n * base * n));
                    if (std::abs(t) < 1e-22) break;
                    s.add(2.0 * t);
                }
            } else {
                for (int n = 0; n < 100000; ++n) {
                    double mu_u = base * (n + holonomy_), mu_d = base * (n + 1.0 - holonomy_);
                    Complex tu = std::exp(-w * mu_u * mu_u), td = std::exp(-w * mu_d * mu_d);
                    s.add(tu + td);
                    if (std::abs(tu) + std::abs(td) < 1e-22) break;
                }
            }
            return s.value();
        }
        case Kind::shifted_integers:
            // e^{-beta w} / (1 - e^{-w})
            return std::exp(-beta_ * w) / (-expm1c(-w));
        case Kind::finite_list: {
            KahanSum<Complex> s;
            for (const auto& e : listed_) s.add(static_cast<double>(e.multiplicity) * std::exp(-w * e.lambda));
            return s.value();
        }
        case Kind::empty:
            return 0.0;
    }
    return 0.0;
}

HeatExpansion CrossSection::heat_expansion() const {
    HeatExpansion h;
    switch (kind_) {
        case Kind::point:
            h.terms = {{0.0, 1.0}};
            h.constant_index = 0;
            break;
        case Kind::circle:
            h.terms = {{-0.5, circumference_ / (2.0 * std::sqrt(M_PI))}, {0.0, 0.0}};
            h.constant_index = 1;
            break;
        case Kind::shifted_integers: {
            // theta(r) = sum_j c_j r^{j-1}, declared through power 6
            for (int j = 0; j <= 7; ++j) h.terms.push_back({static_cast<double>(j - 1), bernoulli_coeffs_[j]});
            h.constant_index = 1;
            break;
        }
        case Kind::finite_list: {
            double total = 0.0;
            for (const auto& e : listed_) total += e.multiplicity;
            h.terms = {{0.0, total}};
            h.constant_index = 0;
            break;
        }
        case Kind::empty:
            break;
    }
    return h;
}

Complex CrossSection::theta_remainder(Complex w) const {
    switch (kind_) {
        case Kind::point:
            return 0.0;
        case Kind::circle: {
            double l = circumference_;
            double e_dual = (1.0 / w).real() * l * l / 4.0;
            double e_dir = w.real() * (2.0 * M_PI / l) * (2.0 * M_PI / l);
            if (e_dual >= e_dir) {
                Complex s = 0.0;
                for (int m = 1; m < 400; ++m) {
                    Complex t = std::exp(-(static_cast<double>(m) * m) * l * l / (4.0 * w));
                    if (std::abs(t) < 1e-22) break;
                    s += 2.0 * std::cos(2.0 * M_PI * m * holonomy_) * t;
                }
                return l / (2.0 * std::sqrt(M_PI)) * std::exp(-0.5 * std::log(w)) * s;
            }
            return heat_theta(w) -
                   l / (2.0 * std::sqrt(M_PI)) * std::exp(-0.5 * std::log(w));
        }
        case Kind::shifted_integers: {
            if (std::abs(w) < 1.5) {
                // tail of the convergent Laurent-type series (radius 2 pi)
                KahanSum<Complex> s;
                Complex wp = std::pow(w, 7);
                for (int j = 8; j < 57; ++j) {
                    s.add(bernoulli_coeffs_[j] * wp);
                    wp *= w;
                }
                return s.value();
            }
            Complex partial = 0.0;
            Complex wp = 1.0 / w;
            for (int j = 0; j <= 7; ++j) {
                partial += bernoulli_coeffs_[j] * wp;
                wp *= w;
            }
            return heat_theta(w) - partial;
        }
        case Kind::finite_list: {
            KahanSum<Complex> s;
            for (const auto& e : listed_)
                s.add(static_cast<double>(e.multiplicity) * expm1c(-w * e.lambda));
            return s.value();
        }
        case Kind::empty:
            return 0.0;
    }
    return 0.0;
}

double CrossSection::exp_tail_bound(double c, double cut) const {
    if (c <= 0.0) throw std::invalid_argument("exp_tail_bound: c must be positive");
    if (finitely_enumerable()) return 0.0;  // listed spectra carry no tail
    // e^{-c lambda} <= e^{-c cut/2} e^{-c lambda/2} beyond the cut
    double theta_half = heat_theta(Complex(0.5 * c, 0.0)).real();
    return std::exp(-0.5 * c * std::max(cut, 0.0)) * theta_half;
}

// certified upper bound for the full sum of mult * e^{-c sqrt(lambda)}
double CrossSection::sqrt_exp_trace_bound(double c) const {
    switch (kind_) {
        case Kind::point:
            return 1.0;
        case Kind::empty:
            return 0.0;
        case Kind::finite_list: {
            double s = 0.0;
            for (const auto& e : listed_) s += e.multiplicity * std::exp(-c * std::sqrt(e.lambda));
            return s;
        }
        case Kind::circle: {
            // sqrt-eigenvalues are arithmetic: exact geometric sums
            double base = 2.0 * M_PI / circumference_;
            double q = std::exp(-c * base);
            if (holonomy_ == 0.0) return 1.0 + 2.0 * q / (1.0 - q);
            double up = std::exp(-c * base * holonomy_);
            double down = std::exp(-c * base * (1.0 - holonomy_));
            return (up + down) / (1.0 - q);
        }
        case Kind::shifted_integers: {
            // direct sum plus the integral tail of the decreasing summand
            KahanSum<double> s;
            int n = 0;
            double term = 1.0;
            for (; n < 1000000; ++n) {
                double root = std::sqrt(n + beta_);
                term = std::exp(-c * root);
                s.add(term);
                if (term < 1e-18) break;
            }
            double root = std::sqrt(n + 1 + beta_);
            s.add(2.0 * (1.0 + c * root) * std::exp(-c * root) / (c * c));
            return s.value();
        }
    }
    return 0.0;
}

double CrossSection::exp_sqrt_tail_bound(double c, double cut) const {
    if (c <= 0.0) throw std::invalid_argument("exp_sqrt_tail_bound: c must be positive");
    if (finitely_enumerable()) return 0.0;
    return std::exp(-0.5 * c * std::sqrt(std::max(cut, 0.0))) * sqrt_exp_trace_bound(0.5 * c);
}

std::string CrossSection::descriptor() const {
    switch (kind_) {
        case Kind::point: return "point";
        case Kind::circle:
            return "circle(l=" + fmt(circumference_) + ",alpha=" + fmt(holonomy_) + ")";
        case Kind::shifted_integers: return "shifted(beta=" + fmt(beta_) + ")";
        case Kind::finite_list: {
            std::string s = "list(d=" + std::to_string(dim_y_);
            for (const auto& e : listed_)
                s += "," + fmt(e.lambda) + "x" + std::to_string(e.multiplicity);
            return s + ")";
        }
        case Kind::empty: return "empty(d=" + std::to_string(dim_y_) + ")";
    }
    return "?";
}

}  // namespace zetaglue
