#include "qint/slice.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qint/errors.hpp"

namespace qint {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Suffix maxima of |c_m|, used to bound the unsummed tail.
std::vector<double> suffix_max_abs(const std::vector<double>& c) {
    std::vector<double> out(c.size() + 1, 0.0);
    for (std::size_t m = c.size(); m-- > 0;) {
        out[m] = std::max(out[m + 1], std::abs(c[m]));
    }
    return out;
}

// sum_{m=lo}^{hi} a^m given a^lo, for a >= 0
double geometric_tail(double a, double a_lo, std::size_t lo, std::size_t hi) {
    if (lo > hi) return 0.0;
    const auto count = static_cast<double>(hi - lo + 1);
    if (a == 1.0) return count;
    return a_lo * (1.0 - std::pow(a, count)) / (1.0 - a);
}

// Sums c_n z^n in increasing degree. Stops once the rigorous tail bound
// max_{m>n}|c_m| * sum_{m>n}|z|^m drops below 1e-16 |partial sum|, or when the
// coefficients run out.
Complex sum_series(const std::vector<double>& c, const std::vector<double>& tail_max, Complex z) {
    const double az = std::abs(z);
    Complex sum{0.0, 0.0};
    Complex power{1.0, 0.0};
    double apower = 1.0;
    const std::size_t M = c.size();
    for (std::size_t n = 0; n < M; ++n) {
        sum += c[n] * power;
        if (n + 1 == M) break;
        const double tail = tail_max[n + 1] * geometric_tail(az, apower * az, n + 1, M - 1);
        if (tail < 1e-16 * std::abs(sum)) break;
        power *= z;
        apower *= az;
    }
    return sum;
}

Complex cpow(Complex z, unsigned n) {
    Complex result{1.0, 0.0};
    while (n != 0) {
        if (n & 1u) result *= z;
        n >>= 1u;
        if (n != 0) z *= z;
    }
    return result;
}

bool on_nonpositive_real_axis(Complex w) { return w.imag() == 0.0 && w.real() <= 0.0; }

Complex named_value(const NamedFunction& f, Complex z) {
    switch (f.kind) {
    case NamedKind::exp:
        return f.scale * std::exp(z);
    case NamedKind::sin:
        return f.scale * std::sin(z);
    case NamedKind::cos:
        return f.scale * std::cos(z);
    case NamedKind::ln:
        if (on_nonpositive_real_axis(z)) throw DomainError("ln is undefined on the non-positive real axis");
        return f.scale * std::log(z);
    case NamedKind::log1m:
        if (on_nonpositive_real_axis(1.0 - z)) throw DomainError("ln(1-x) is undefined for real x >= 1");
        return f.scale * std::log(1.0 - z);
    case NamedKind::reciprocal:
        if (z == Complex{1.0, 0.0}) throw DomainError("1/(1-x) has a pole at x = 1");
        return f.scale / (1.0 - z);
    case NamedKind::monomial:
        return f.scale * cpow(z, f.degree);
    }
    throw std::logic_error("unreachable");
}

Complex named_derivative(const NamedFunction& f, Complex z) {
    switch (f.kind) {
    case NamedKind::exp:
        return f.scale * std::exp(z);
    case NamedKind::sin:
        return f.scale * std::cos(z);
    case NamedKind::cos:
        return -f.scale * std::sin(z);
    case NamedKind::ln:
        if (on_nonpositive_real_axis(z)) throw DomainError("ln is undefined on the non-positive real axis");
        return f.scale / z;
    case NamedKind::log1m:
        if (on_nonpositive_real_axis(1.0 - z)) throw DomainError("ln(1-x) is undefined for real x >= 1");
        return -f.scale / (1.0 - z);
    case NamedKind::reciprocal: {
        if (z == Complex{1.0, 0.0}) throw DomainError("1/(1-x) has a pole at x = 1");
        const Complex w = 1.0 - z;
        return f.scale / (w * w);
    }
    case NamedKind::monomial:
        if (f.degree == 0) return {0.0, 0.0};
        return f.scale * static_cast<double>(f.degree) * cpow(z, f.degree - 1);
    }
    throw std::logic_error("unreachable");
}

struct SliceCoords {
    double xi0;
    double r;
    std::optional<UnitImaginary> u;

    [[nodiscard]] Complex z() const { return {xi0, u ? r : 0.0}; }
    [[nodiscard]] Quaternion lift(Complex v) const { return u ? u->lift(v) : Quaternion{v.real()}; }
};

SliceCoords coords(const Quaternion& x) {
    const double r = x.imag_norm();
    if (r <= kAxisEpsilon) return {x.w, r, std::nullopt};
    return {x.w, r, UnitImaginary{x}};
}

} // namespace

// ---------------------------------------------------------------------------

UnitImaginary::UnitImaginary(const Quaternion& q) {
    const double r = q.imag_norm();
    if (!(r > kAxisEpsilon)) {
        throw DegenerateSlice("unit imaginary undefined: imaginary part vanishes");
    }
    value_ = q.imag() / r;
}

PowerSeries::PowerSeries(std::vector<double> coeffs, double radius)
    : coeffs_{std::move(coeffs)}, radius_{radius} {
    if (!(radius_ > 0.0) || std::isnan(radius_)) {
        throw std::invalid_argument("power series radius must be positive");
    }
    for (double c : coeffs_) {
        if (!std::isfinite(c)) throw std::invalid_argument("power series coefficients must be finite");
    }
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    for (std::size_t n = 1; n < coeffs_.size(); ++n) {
        dcoeffs_.push_back(static_cast<double>(n) * coeffs_[n]);
    }
    if (dcoeffs_.empty()) dcoeffs_.push_back(0.0);
    tail_max_ = suffix_max_abs(coeffs_);
    dtail_max_ = suffix_max_abs(dcoeffs_);
}

void PowerSeries::check_domain(Complex z) const {
    if (std::abs(z) >= radius_) {
        std::ostringstream msg;
        msg << "|x| = " << std::abs(z) << " outside the radius of convergence " << radius_;
        throw DomainError(msg.str());
    }
}

Complex PowerSeries::value(Complex z) const {
    check_domain(z);
    return sum_series(coeffs_, tail_max_, z);
}

Complex PowerSeries::derivative(Complex z) const {
    check_domain(z);
    return sum_series(dcoeffs_, dtail_max_, z);
}

AnalyticFunction::AnalyticFunction(NamedFunction f) : repr_{f} {
    if (!std::isfinite(f.scale)) throw std::invalid_argument("function scale must be finite");
}

Complex AnalyticFunction::value(Complex z) const {
    return std::visit(overloaded{[&](const PowerSeries& s) { return s.value(z); },
                                 [&](const NamedFunction& f) { return named_value(f, z); }},
                      repr_);
}

Complex AnalyticFunction::derivative(Complex z) const {
    return std::visit(overloaded{[&](const PowerSeries& s) { return s.derivative(z); },
                                 [&](const NamedFunction& f) { return named_derivative(f, z); }},
                      repr_);
}

bool AnalyticFunction::is_entire() const {
    return std::visit(overloaded{[](const PowerSeries& s) { return std::isinf(s.radius()); },
                                 [](const NamedFunction& f) {
                                     return f.kind == NamedKind::exp || f.kind == NamedKind::sin ||
                                            f.kind == NamedKind::cos || f.kind == NamedKind::monomial;
                                 }},
                      repr_);
}

bool AnalyticFunction::is_single_valued() const {
    if (const auto* f = std::get_if<NamedFunction>(&repr_)) {
        return f->kind != NamedKind::ln && f->kind != NamedKind::log1m;
    }
    return true;
}

std::string AnalyticFunction::describe() const {
    std::ostringstream os;
    std::visit(overloaded{[&](const PowerSeries& s) {
                              os << "series[";
                              for (std::size_t n = 0; n < s.coeffs().size(); ++n) {
                                  os << (n ? "," : "") << s.coeffs()[n];
                              }
                              os << "]";
                          },
                          [&](const NamedFunction& f) {
                              if (f.scale != 1.0) os << f.scale << "*";
                              if (f.kind == NamedKind::monomial) {
                                  os << "x^" << f.degree;
                              } else {
                                  os << to_string(f.kind);
                              }
                          }},
               repr_);
    return os.str();
}

std::string to_string(NamedKind kind) {
    switch (kind) {
    case NamedKind::exp: return "exp";
    case NamedKind::sin: return "sin";
    case NamedKind::cos: return "cos";
    case NamedKind::ln: return "ln";
    case NamedKind::reciprocal: return "reciprocal";
    case NamedKind::log1m: return "log1m";
    case NamedKind::monomial: return "monomial";
    }
    return "?";
}

NamedKind named_kind_from_string(const std::string& name) {
    for (auto k : {NamedKind::exp, NamedKind::sin, NamedKind::cos, NamedKind::ln, NamedKind::reciprocal,
                   NamedKind::log1m, NamedKind::monomial}) {
        if (to_string(k) == name) return k;
    }
    if (name == "log") return NamedKind::ln;
    throw ParseError("unknown function name '" + name + "'");
}

// ---------------------------------------------------------------------------

SlicePoint slice_point(const Quaternion& x) {
    UnitImaginary u{x};
    return {x.w, x.imag_norm(), u};
}

DeltaSplit decompose_delta(const Quaternion& x, const Quaternion& delta) {
    const Quaternion u = slice_point(x).u.value();
    const Quaternion udu = u * delta * u;
    return {0.5 * (delta - udu), 0.5 * (delta + udu)};
}

Quaternion eval_function(const AnalyticFunction& F, const Quaternion& x) {
    const SliceCoords c = coords(x);
    return c.lift(F.value(c.z()));
}

Quaternion eval_derivative(const AnalyticFunction& F, const Quaternion& x) {
    const SliceCoords c = coords(x);
    return c.lift(F.derivative(c.z()));
}

double perp_quotient(const AnalyticFunction& F, const Quaternion& x) {
    const SliceCoords c = coords(x);
    if (!c.u) return F.derivative(c.z()).real();
    return F.value(c.z()).imag() / c.r;
}

SliceForm slice_form(const AnalyticFunction& F, const Quaternion& x) {
    const SlicePoint p = slice_point(x);
    const Complex f = F.value({p.xi0, p.r});
    const double B = f.imag() / p.r;
    return {f.real() - B * p.xi0, B};
}

AnalyticFunction antiderivative(const AnalyticFunction& F) {
    if (const auto* s = std::get_if<PowerSeries>(&F.repr())) {
        std::vector<double> h(s->coeffs().size() + 1, 0.0);
        for (std::size_t n = 0; n < s->coeffs().size(); ++n) {
            h[n + 1] = s->coeffs()[n] / static_cast<double>(n + 1);
        }
        return AnalyticFunction::series(std::move(h), s->radius());
    }
    const auto& f = std::get<NamedFunction>(F.repr());
    switch (f.kind) {
    case NamedKind::exp:
        return AnalyticFunction::named(NamedKind::exp, f.scale);
    case NamedKind::cos:
        return AnalyticFunction::named(NamedKind::sin, f.scale);
    case NamedKind::sin:
        return AnalyticFunction::named(NamedKind::cos, -f.scale);
    case NamedKind::reciprocal:
        return AnalyticFunction::named(NamedKind::log1m, -f.scale);
    case NamedKind::monomial:
        return AnalyticFunction::monomial(f.degree + 1, f.scale / static_cast<double>(f.degree + 1));
    case NamedKind::ln:
    case NamedKind::log1m:
        break;
    }
    throw Unsupported("no registered antiderivative for " + F.describe());
}

PowerSeries to_series(const AnalyticFunction& F) {
    if (const auto* s = std::get_if<PowerSeries>(&F.repr())) return *s;
    const auto& f = std::get<NamedFunction>(F.repr());
    if (f.kind != NamedKind::monomial) {
        throw Unsupported(F.describe() + " has no finite series form");
    }
    std::vector<double> c(f.degree + 1, 0.0);
    c[f.degree] = f.scale;
    return PowerSeries{std::move(c)};
}

AnalyticFunction series_product(const AnalyticFunction& F, const AnalyticFunction& G, unsigned max_degree) {
    const PowerSeries a = to_series(F);
    const PowerSeries b = to_series(G);
    const std::size_t degree = std::min<std::size_t>(max_degree, a.coeffs().size() + b.coeffs().size() - 2);
    std::vector<double> c(degree + 1, 0.0);
    for (std::size_t n = 0; n < a.coeffs().size(); ++n) {
        for (std::size_t m = 0; m < b.coeffs().size() && n + m <= degree; ++m) {
            c[n + m] += a.coeffs()[n] * b.coeffs()[m];
        }
    }
    return AnalyticFunction::series(std::move(c), std::min(a.radius(), b.radius()));
}

} // namespace qint
