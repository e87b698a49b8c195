#include "scpn/verifier.hpp"

#include "scpn/cp2.hpp"
#include "scpn/cpn.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace scpn {

const std::vector<std::string>& all_check_names()
{
    static const std::vector<std::string> names{
        "system",        "cp2_components", "constraint", "expansion",     "el",
        "conservation",  "idempotency",    "hermiticity", "trace",        "completeness",
        "orthogonality", "prop3",          "b_telescoping", "theorem",    "a1",
        "holomorphy",    "bosonic_oracle", "special_closed_forms", "special_display"};
    return names;
}

void validate_check_names(const std::vector<std::string>& names)
{
    const auto& all = all_check_names();
    for (const auto& n : names)
        if (std::find(all.begin(), all.end(), n) == all.end()) raise(ErrorKind::ConfigParseError, "unknown check '" + n + "'");
}

std::string to_string(HolomorphyType t)
{
    switch (t) {
    case HolomorphyType::holomorphic: return "holomorphic";
    case HolomorphyType::anti_holomorphic: return "anti-holomorphic";
    case HolomorphyType::constant: return "constant";
    case HolomorphyType::mixed: return "mixed";
    }
    return "mixed";
}

namespace {

template <class F>
int order_of(const SuperMatrix<F>& P)
{
    auto fr = frame_of(P);
    require(fr.has_value(), ErrorKind::JetOrderExhausted, "zero matrix carries no jet orders");
    require(fr->orders.plus == fr->orders.minus, ErrorKind::OrderMismatch, "projector orders must be square");
    return fr->orders.plus;
}

template <class F>
double matrix_scale(const std::vector<SuperMatrix<F>>& Ps)
{
    double s = 1.0;
    for (const auto& P : Ps) s = std::max(s, max_abs(P));
    return s;
}

struct Acc {
    double norm = 0.0;
    bool zero = true;
    template <class X>
    void add(const X& x)
    {
        norm = std::max(norm, max_abs(x));
        zero = zero && is_zero(x);
    }
    void add(const Residual& r)
    {
        norm = std::max(norm, r.norm);
        zero = zero && r.exact_zero;
    }
};

template <class F>
SuperVector<F> apply_numeric(const std::vector<F>& V, const SuperVector<F>& v)
{
    const std::size_t n = v.size();
    std::vector<SuperScalar<F>> out(n, SuperScalar<F>(v[0].algebra()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (!field_traits<F>::is_zero(V[i * n + k]) && !v[k].is_zero()) out[i] += v[k].scaled_by_field(V[i * n + k]);
    return SuperVector<F>(std::move(out));
}

} // namespace

template <class F>
std::pair<SuperMatrix<F>, SuperMatrix<F>> el_commutator_residual(const SuperMatrix<F>& P)
{
    const int w = order_of(P);
    const SuperMatrix<F> dpm = super_derive(super_derive(P, Direction::minus), Direction::plus);
    const SuperMatrix<F> comm = mat_commutator(dpm, fit(P, JetOrders{w - 1, w - 1}));
    return {comm, P * P - P};
}

template <class F>
SuperMatrix<F> xi_field(const SuperMatrix<F>& P)
{
    const int w = order_of(P);
    const SuperMatrix<F> dm = super_derive(P, Direction::minus);
    return mat_commutator(fit(P, JetOrders{w, w - 1}), dm);
}

template <class F>
SuperMatrix<F> conservation_residual(const SuperMatrix<F>& P)
{
    const SuperMatrix<F> xi = xi_field(P);
    return super_derive(xi, Direction::plus) + super_derive(dagger(xi), Direction::minus);
}

template <class F>
std::pair<SuperMatrix<F>, SuperMatrix<F>> holomorphy_residuals(const SolutionBundle<F>& b, int j)
{
    require(j >= 0 && j < b.n, ErrorKind::IndexOutOfRange, "projector index " + std::to_string(j));
    const SuperMatrix<F>& P = b.P[j];
    const int w = order_of(P);
    const SuperMatrix<F> hol = super_derive(P, Direction::minus) * fit(P, JetOrders{w, w - 1});
    const SuperMatrix<F> anti = super_derive(P, Direction::plus) * fit(P, JetOrders{w - 1, w});
    return {hol, anti};
}

template <class F>
HolomorphyType holomorphy_type(const SolutionBundle<F>& b, int j, double tolerance)
{
    const auto [hol, anti] = holomorphy_residuals(b, j);
    auto zero = [&](const SuperMatrix<F>& m) {
        if constexpr (field_traits<F>::exact)
            return is_zero(m);
        else
            return max_abs(m) <= tolerance * std::max(1.0, max_abs(b.P[j]));
    };
    const bool h = zero(hol), a = zero(anti);
    if (h && a) return HolomorphyType::constant;
    if (h) return HolomorphyType::holomorphic;
    if (a) return HolomorphyType::anti_holomorphic;
    return HolomorphyType::mixed;
}

template <class F>
SuperScalar<F> lagrangian_density(const SuperMatrix<F>& P)
{
    const int w = order_of(P);
    const JetOrders o{w - 1, w - 1};
    const SuperMatrix<F> prod = fit(super_derive(P, Direction::minus), o) * fit(super_derive(P, Direction::plus), o);
    return trace(prod).scaled_by_field(field_traits<F>::from_int(2));
}

template <class F>
SuperScalar<F> lagrangian_from_phi(const SuperVector<F>& phi)
{
    const auto o = orders_of(phi[0]);
    require(o.has_value() && o->plus == o->minus, ErrorKind::OrderMismatch, "Phi needs square jet orders");
    const int w = o->plus;
    const SuperScalar<F> n2 = inner(phi, phi);
    if (field_traits<F>::is_zero(body_value(n2))) raise(ErrorKind::ZeroBody, "Phi has vanishing norm");
    const auto one = SuperScalar<F>::scalar(phi[0].algebra(), Jet<F>::constant(phi[0].terms().front().coeff.base(), *o,
                                                                                field_traits<F>::from_int(1)));
    const SuperScalar<F> defect = n2 - one;
    if constexpr (field_traits<F>::exact) {
        if (!defect.is_zero()) raise(ErrorKind::ZeroBody, "Phi is not normalized");
    } else {
        if (max_abs(defect) > 1e-9) raise(ErrorKind::ZeroBody, "Phi is not normalized");
    }
    auto covariant = [&](Direction d) {
        const SuperVector<F> dphi = super_derive(phi, d);
        const JetOrders od = o->lowered(d);
        const SuperScalar<F> conn = inner(fit(phi, od.swapped()), dphi);
        return dphi - fit(phi, od) * conn;
    };
    const JetOrders sq{w - 1, w - 1};
    const SuperVector<F> dp = fit(covariant(Direction::plus), sq);
    const SuperVector<F> dm = fit(covariant(Direction::minus), sq);
    return (inner(dp, dp) - inner(dm, dm)).scaled_by_field(field_traits<F>::from_int(2));
}

template <class F>
SolutionBundle<F> apply_gauge(const SolutionBundle<F>& b, const std::vector<F>& V)
{
    const std::size_t n = static_cast<std::size_t>(b.n);
    require(V.size() == n * n, ErrorKind::DimensionMismatch, "gauge matrix must be N x N");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            F s{};
            for (std::size_t k = 0; k < n; ++k) s += field_traits<F>::conj(V[k * n + i]) * V[k * n + j];
            if (i == j) s -= field_traits<F>::from_int(1);
            bool ok;
            if constexpr (field_traits<F>::exact)
                ok = s.is_zero();
            else
                ok = std::abs(s) <= 1e-12;
            if (!ok) raise(ErrorKind::NotUnitary, "V^dagger V != I");
        }
    SolutionBundle<F> out = b;
    for (auto& p : out.psi_ext) p = apply_numeric(V, p);
    if (out.psi0_full) out.psi0_full = apply_numeric(V, *out.psi0_full);
    if (out.cp2) {
        auto& c = *out.cp2;
        for (auto* v : {&c.psi0b, &c.psi0f, &c.psi1b, &c.psi1f, &c.psi2b, &c.psi2f}) *v = apply_numeric(V, *v);
    }
    finalize_bundle(out);
    return out;
}

template <class F>
VerificationReport verify_all(const SolutionBundle<F>& b, const VerifyOptions& opts)
{
    validate_check_names(opts.checks);
    VerificationReport report;
    const double scale = matrix_scale(b.P);
    const int n = b.n;
    const int w = b.working_order();

    auto selected = [&](const std::string& name) {
        return opts.checks.empty() || std::find(opts.checks.begin(), opts.checks.end(), name) != opts.checks.end();
    };
    auto run = [&](const std::string& name, const std::function<void(Acc&)>& body, bool informational = false) {
        if (!selected(name)) return;
        CheckResult r;
        r.name = name;
        r.informational = informational;
        try {
            Acc acc;
            body(acc);
            r.norm = acc.norm;
            r.exact_zero = acc.zero;
            if constexpr (field_traits<F>::exact)
                r.pass = acc.zero;
            else
                r.pass = acc.zero || acc.norm <= opts.tolerance * scale;
        } catch (const Error& e) {
            r.norm = std::numeric_limits<double>::infinity();
            r.exact_zero = false;
            r.pass = false;
        }
        report.checks.push_back(r);
    };
    auto skip = [&](const std::string& name, const std::string& reason) {
        if (selected(name)) report.skipped.push_back({name, reason});
    };

    run("system", [&](Acc& a) {
        for (const auto& r : system_residuals(b)) a.add(r);
    });
    if (b.cp2)
        run("cp2_components", [&](Acc& a) {
            for (const auto& r : cp2_component_residuals(*b.cp2)) a.add(r);
        });
    else
        skip("cp2_components", "no CP2 component data in this bundle");
    if (n >= 3)
        run("constraint", [&](Acc& a) {
            for (int j = 1; j <= n - 2; ++j) a.add(check_general_constraint(b, j));
        });
    else
        skip("constraint", "no middle projector for N = 2");
    run("expansion", [&](Acc& a) {
        for (int j = 1; j < n; ++j) {
            const std::vector<SuperVector<F>> basis(b.psi.begin(), b.psi.begin() + j + 1);
            const auto ex = expand_in_basis(b.gamma_psi[j], basis, b.frame);
            a.add(ex.residual);
            for (int k = 0; k <= j; ++k) a.add(ex.coeffs[k] - b.alpha[j][k]);
        }
    });
    run("el", [&](Acc& a) {
        for (const auto& P : b.P) a.add(el_commutator_residual(P).first);
    });
    run("conservation", [&](Acc& a) {
        for (const auto& P : b.P) a.add(conservation_residual(P));
    });
    run("idempotency", [&](Acc& a) {
        for (const auto& P : b.P) a.add(P * P - P);
    });
    run("hermiticity", [&](Acc& a) {
        for (const auto& P : b.P) a.add(dagger(P) - P);
    });
    run("trace", [&](Acc& a) {
        for (const auto& P : b.P) a.add(trace(P) - b.frame.one());
    });
    run("completeness", [&](Acc& a) {
        SuperMatrix<F> sum = SuperMatrix<F>::identity(b.frame, n);
        for (const auto& P : b.P) sum = sum - P;
        a.add(sum);
    });
    run("orthogonality", [&](Acc& a) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) a.add(b.P[i] * b.P[j]);
    });
    run("prop3", [&](Acc& a) {
        for (const auto& [m, p] : prop3_residuals(b)) {
            a.add(m);
            a.add(p);
        }
    });
    run("b_telescoping", [&](Acc& a) {
        const JetOrders op{w - 1, w};
        SuperMatrix<F> prev = b_matrix(b, -1);
        for (int j = 0; j < n; ++j) {
            const SuperMatrix<F> cur = b_matrix(b, j);
            a.add(super_derive(b.P[j], Direction::plus) - fit(cur - prev, op));
            prev = cur;
        }
    });
    run("theorem", [&](Acc& a) {
        SuperMatrix<F> below(b.frame.algebra, n); // sum_{k<j} P_k, doubled in the target
        for (int j = 0; j < n; ++j) {
            const SuperMatrix<F> target = b.P[j] + below + below;
            a.add(dagger(xi_field(b.P[j])) - super_derive(target, Direction::plus));
            below = below + b.P[j];
        }
    });
    run("a1", [&](Acc& a) {
        const JetOrders om{w, w - 1};
        const SuperVector<F> wv = b.z[1] * b.inv_norm2[1];
        const SuperScalar<F> a1_dag = inner(fit(b.gamma_psi[1], om), super_derive(wv, Direction::plus));
        const SuperScalar<F> a1 = gconj(a1_dag);
        const SuperScalar<F> alpha1 = inner(b.z[1], b.gamma_psi[1]) * b.inv_norm2[1];
        a.add(a1);
        a.add(a1 - super_derive(alpha1, Direction::minus));
    });
    run("holomorphy", [&](Acc& a) {
        a.add(holomorphy_residuals(b, 0).first);
        a.add(holomorphy_residuals(b, n - 1).second);
    });
    bool fermion_free = b.psi0_full.has_value();
    for (const auto& p : b.psi_ext) fermion_free = fermion_free && is_fermion_free(p);
    if (fermion_free)
        run("bosonic_oracle", [&](Acc& a) {
            const ProjectorSet<F> tower = bosonic_tower(*b.psi0_full, n);
            const int m = std::min(tower.orders.plus, w);
            for (int j = 0; j < n; ++j) a.add(fit(b.P[j], square_orders(m)) - fit(tower.P[j], square_orders(m)));
        });
    else
        skip("bosonic_oracle", "bundle carries fermionic content");
    if (!b.special.empty())
        run("special_closed_forms", [&](Acc& a) {
            for (const auto& r : b.special) a.add(r);
        });
    else
        skip("special_closed_forms", "not a special-case bundle");
    if (!b.special_display.empty())
        run("special_display", [&](Acc& a) {
            for (const auto& r : b.special_display) a.add(r);
        }, true);
    else
        skip("special_display", "not a special-case bundle");

    report.pass = true;
    for (const auto& c : report.checks)
        if (!c.informational) report.pass = report.pass && c.pass;
    return report;
}

#define SCPN_INSTANTIATE_VERIFIER(F)                                                                               \
    template std::pair<SuperMatrix<F>, SuperMatrix<F>> el_commutator_residual(const SuperMatrix<F>&);              \
    template SuperMatrix<F> xi_field(const SuperMatrix<F>&);                                                       \
    template SuperMatrix<F> conservation_residual(const SuperMatrix<F>&);                                          \
    template std::pair<SuperMatrix<F>, SuperMatrix<F>> holomorphy_residuals(const SolutionBundle<F>&, int);        \
    template HolomorphyType holomorphy_type(const SolutionBundle<F>&, int, double);                                \
    template SuperScalar<F> lagrangian_density(const SuperMatrix<F>&);                                             \
    template SuperScalar<F> lagrangian_from_phi(const SuperVector<F>&);                                            \
    template SolutionBundle<F> apply_gauge(const SolutionBundle<F>&, const std::vector<F>&);                       \
    template VerificationReport verify_all(const SolutionBundle<F>&, const VerifyOptions&);

SCPN_INSTANTIATE_VERIFIER(GaussRational)
SCPN_INSTANTIATE_VERIFIER(Complex)

} // namespace scpn
