#include "scpn/cp2.hpp"

namespace scpn {

namespace {

template <class F>
JetOrders level(const CP2FreeData<F>& d, int consumed)
{
    return d.frame.orders.lowered(Direction::plus, consumed);
}

template <class F>
SuperVector<F> dplus(const SuperVector<F>& v, int times = 1)
{
    SuperVector<F> out = v;
    for (int k = 0; k < times; ++k) out = partial(out, Direction::plus);
    return out;
}

template <class F>
SuperScalar<F> dplus(const SuperScalar<F>& s)
{
    return partial(s, Direction::plus);
}

template <class F>
F minus_i()
{
    return -field_traits<F>::i();
}

template <class F>
void check_param(const FermionicParam<F>& p, const std::string& name)
{
    require(p.f.is_odd(), ErrorKind::ParityError, name + ".f must be odd");
    require(p.b.is_even(), ErrorKind::ParityError, name + ".b must be even");
    require(is_holomorphic(p.f) && is_holomorphic(p.b), ErrorKind::ParityError, name + " must be holomorphic");
}

// Inverses of the two distinguished even parameters, with named diagnostics.
template <class F>
struct Inverses {
    SuperScalar<F> a1b;
    SuperScalar<F> b2b;
};

template <class F>
Inverses<F> inverses(const CP2FreeData<F>& d)
{
    return {invert_even(d.alpha[1].b, "alpha1.b"), invert_even(d.beta[2].b, "beta2.b")};
}

// S0 = beta0^f - beta2^f beta0^b / beta2^b + beta2^f beta1^f beta0^f / beta2^b
// S1 = beta1^f - beta2^f beta1^b / beta2^b
template <class F>
std::pair<SuperScalar<F>, SuperScalar<F>> beta_combinations(const CP2FreeData<F>& d, const SuperScalar<F>& ib)
{
    const auto& b = d.beta;
    SuperScalar<F> s0 = b[0].f - b[2].f * b[0].b * ib + b[2].f * b[1].f * b[0].f * ib;
    SuperScalar<F> s1 = b[1].f - b[2].f * b[1].b * ib;
    return {std::move(s0), std::move(s1)};
}

} // namespace

template <class F>
void validate_cp2_data(const CP2FreeData<F>& d)
{
    require(d.psi0b.size() == 3 && d.psi2f.size() == 3, ErrorKind::DimensionMismatch, "CP2 data needs 3-vectors");
    for (std::size_t k = 0; k < 3; ++k) {
        require(d.psi0b[k].is_even(), ErrorKind::ParityError, "psi0b must be even");
        require(d.psi2f[k].is_odd(), ErrorKind::ParityError, "psi2f must be odd");
    }
    require(is_holomorphic(d.psi0b) && is_holomorphic(d.psi2f), ErrorKind::ParityError, "psi0b/psi2f must be holomorphic");
    check_param(d.alpha[0], "alpha0");
    check_param(d.alpha[1], "alpha1");
    check_param(d.beta[0], "beta0");
    check_param(d.beta[1], "beta1");
    check_param(d.beta[2], "beta2");
    require(d.frame.orders.plus >= kCP2ConsumedOrders + 2, ErrorKind::JetOrderExhausted,
            "CP2 construction needs x+ jet order >= 5");
}

template <class F>
SuperVector<F> compute_psi0f(const CP2FreeData<F>& d)
{
    const JetOrders o1 = level(d, 1);
    const SuperScalar<F> ia = invert_even(d.alpha[1].b, "alpha1.b");
    const auto& a = d.alpha;
    const SuperScalar<F> c0 = fit(a[0].f - a[1].f * a[0].b * ia, o1);
    const SuperScalar<F> c1 = fit(a[1].f * ia, o1).scaled_by_field(minus_i<F>());
    return c0 * fit(d.psi0b, o1) + c1 * dplus(d.psi0b);
}

template <class F>
std::pair<SuperScalar<F>, SuperScalar<F>> compute_A0_A1(const CP2FreeData<F>& d)
{
    const auto inv = inverses(d);
    const SuperScalar<F>& ia = inv.a1b;
    const SuperScalar<F>& ib = inv.b2b;
    const auto [s0, s1] = beta_combinations(d, ib);
    const auto& a = d.alpha;
    const auto& b = d.beta;
    const SuperScalar<F> one = d.frame.one();

    SuperScalar<F> A0 = -(a[0].b * ia * (one + a[0].f * a[1].f * ia));
    A0 += a[1].f * ia * s0;
    A0 -= a[0].b * a[1].f * ia * ia * s1;
    A0 += a[1].f * b[2].f * b[0].f * ia * ib * (a[0].f - a[1].f * a[0].b * ia);

    SuperScalar<F> A1 = (ia * (one + a[0].f * a[1].f * ia + a[1].f * ia * s1)).scaled_by_field(minus_i<F>());
    return {std::move(A0), std::move(A1)};
}

template <class F>
SuperVector<F> compute_psi1b(const CP2FreeData<F>& d)
{
    const JetOrders o2 = level(d, 2);
    const auto inv = inverses(d);
    const auto [A0, A1] = compute_A0_A1(d);
    const SuperScalar<F> C = d.alpha[1].f * d.beta[2].f * inv.a1b * inv.b2b;

    const SuperVector<F> u0 = fit(d.psi0b, o2);
    const SuperVector<F> u1 = fit(dplus(d.psi0b), o2);
    const SuperVector<F> u2 = dplus(d.psi0b, 2);
    const SuperScalar<F> a0 = fit(A0, o2), a1 = fit(A1, o2);
    const SuperScalar<F> dA0 = fit(dplus(A0), o2), dA1 = fit(dplus(A1), o2);

    const SuperVector<F> bracket = dA0 * u0 + (a0 + dA1) * u1 + a1 * u2;
    return a0 * u0 + a1 * u1 + fit(C, o2).scaled_by_field(minus_i<F>()) * bracket;
}

template <class F>
SuperVector<F> compute_psi1f(const CP2FreeData<F>& d, const SuperVector<F>& psi0f, const SuperVector<F>& psi1b)
{
    const JetOrders o3 = level(d, 3);
    const auto inv = inverses(d);
    const auto [s0, s1] = beta_combinations(d, inv.b2b);
    const auto& b = d.beta;
    SuperVector<F> out = fit(s0, o3) * fit(d.psi0b, o3);
    out = out + fit(s1, o3) * fit(psi1b, o3);
    out = out + fit(b[2].f * b[0].f * inv.b2b, o3) * fit(psi0f, o3);
    out = out + fit(b[2].f * inv.b2b, o3).scaled_by_field(minus_i<F>()) * fit(dplus(psi1b), o3);
    return out;
}

template <class F>
SuperVector<F> compute_psi2b(const CP2FreeData<F>& d, const SuperVector<F>& psi0f, const SuperVector<F>& psi1b,
                             const SuperVector<F>& psi1f)
{
    const JetOrders o3 = level(d, 3);
    const SuperScalar<F> ib = fit(invert_even(d.beta[2].b, "beta2.b"), o3);
    const auto& b = d.beta;
    SuperVector<F> sum = fit(b[0].f, o3) * fit(psi0f, o3);
    sum = sum + fit(b[1].f, o3) * fit(psi1f, o3);
    sum = sum + fit(b[2].f, o3) * fit(d.psi2f, o3);
    sum = sum - fit(b[0].b, o3) * fit(d.psi0b, o3);
    sum = sum - fit(b[1].b, o3) * fit(psi1b, o3);
    sum = sum + scale(fit(dplus(psi1b), o3), minus_i<F>());
    return ib * sum;
}

template <class F>
SolutionBundle<F> build_cp2_solution(const CP2FreeData<F>& d)
{
    validate_cp2_data(d);
    const JetOrders o3 = level(d, 3);
    const int w = std::min(o3.plus - 1, d.frame.orders.minus);
    require(w >= 1, ErrorKind::JetOrderExhausted, "CP2 working order below 1");

    CP2Parts<F> parts;
    parts.psi0f = compute_psi0f(d);
    parts.psi1b = compute_psi1b(d);
    parts.psi1f = compute_psi1f(d, parts.psi0f, parts.psi1b);
    parts.psi2b = compute_psi2b(d, parts.psi0f, parts.psi1b, parts.psi1f);
    std::tie(parts.A0, parts.A1) = compute_A0_A1(d);
    parts.psi0b = fit(d.psi0b, o3);
    parts.psi0f = fit(parts.psi0f, o3);
    parts.psi1b = fit(parts.psi1b, o3);
    parts.psi2f = fit(d.psi2f, o3);
    parts.A0 = fit(parts.A0, o3);
    parts.A1 = fit(parts.A1, o3);
    for (int k = 0; k < 2; ++k) parts.alpha[k] = {fit(d.alpha[k].f, o3), fit(d.alpha[k].b, o3)};
    for (int k = 0; k < 3; ++k) parts.beta[k] = {fit(d.beta[k].f, o3), fit(d.beta[k].b, o3)};

    SolutionBundle<F> b;
    b.kind = "cp2";
    b.n = 3;
    b.frame = d.frame.with_orders(square_orders(w));
    const JetOrders ext = extended_orders(w);
    b.psi_ext = {fit(assemble(parts.psi0b, parts.psi0f), ext), fit(assemble(parts.psi1b, parts.psi1f), ext),
                 fit(assemble(parts.psi2b, parts.psi2f), ext)};
    const JetOrders sq = square_orders(w);
    auto param = [&](const FermionicParam<F>& p) { return fit(assemble(p.f, p.b), sq); };
    b.alpha = {{}, {param(d.alpha[0]), param(d.alpha[1])}, {param(d.beta[0]), param(d.beta[1]), param(d.beta[2])}};
    b.psi0_full = d.psi0b;
    b.cp2 = std::move(parts);
    finalize_bundle(b);
    return b;
}

template <class F>
SolutionBundle<F> build_cp2_special(CP2FreeData<F> d)
{
    const SuperScalar<F> zero = d.frame.zero();
    d.alpha[0] = {zero, zero};
    d.beta[0] = {zero, zero};
    d.beta[1] = {zero, zero};
    SolutionBundle<F> b = build_cp2_solution(d);
    b.kind = "cp2-special";

    const int w = b.working_order();
    const JetOrders sq = square_orders(w), ext = extended_orders(w);
    const JetOrders o1 = level(d, 1), o2 = level(d, 2), o3 = level(d, 3);
    const SuperScalar<F> ia = invert_even(d.alpha[1].b, "alpha1.b");
    const SuperScalar<F> ib = invert_even(d.beta[2].b, "beta2.b");
    const SuperScalar<F>& a1f = d.alpha[1].f;
    const SuperScalar<F>& b2f = d.beta[2].f;
    const SuperVector<F>& u = d.psi0b;
    const auto& parts = *b.cp2;

    // A0 = 0, A1 = -i / alpha1^b
    b.special.push_back(make_residual("A0", parts.A0));
    b.special.push_back(make_residual("A1", parts.A1 - fit(ia, o3).scaled_by_field(minus_i<F>())));

    // psi_0 = psi0b + theta+ (alpha1^f / alpha1^b) d+ psi0b
    {
        const SuperVector<F> shown = fit(u, o1) + theta_plus_times(fit(a1f * ia, o1)) * dplus(u);
        b.special.push_back(make_residual("psi0", b.psi_ext[0] - fit(shown, ext)));
    }

    const SuperScalar<F> ia1 = fit(ia, o1), ib1 = fit(ib, o1), a1f1 = fit(a1f, o1), b2f1 = fit(b2f, o1);
    const SuperVector<F> du = dplus(u);
    const F i = field_traits<F>::i();

    // z_1 at theta = 0 in terms of P_{x+} u
    {
        const SuperScalar<F> c1 =
            fit(ia1.scaled_by_field(minus_i<F>()) + a1f1 * b2f1 * dplus(d.alpha[1].b) * ia1 * ia1 * ia1 * ib1, sq);
        const SuperScalar<F> c2 = -fit(a1f * b2f * ia * ia * ib, sq);
        const SuperVector<F> u0 = fit(u, sq), u1 = fit(du, sq), u2 = fit(dplus(u, 2), sq);
        const SuperScalar<F> inv_u2 = ginvert(inner(u0, u0));
        const SuperVector<F> px_u = u1 - (inner(u0, u1) * inv_u2) * u0;
        const SuperVector<F> perp_u2 = u2 - (inner(u0, u2) * inv_u2) * u0;
        const SuperVector<F> shown = c1 * px_u + c2 * perp_u2;
        b.special.push_back(make_residual("z1_theta0", theta_free_part(b.z[1]) - shown));
    }

    // Printed psi_1 and psi_2 lines, compared but only flagged.
    {
        const SuperVector<F> W = dplus(ia1 * du); // d+((1/alpha1^b) d+ u), at o2
        const SuperScalar<F> paren = d.frame.with_orders(o1).one() - (a1f1 * dplus(b2f) * ia1 * ib1).scaled_by_field(i);
        const SuperScalar<F> factor = fit(a1f * ia, o2) + fit(theta_plus_times(paren).scaled_by_field(i), o2);
        const SuperVector<F> lead = fit(ia1.scaled_by_field(minus_i<F>()) * du, o2);
        const SuperVector<F> psi1 = lead + (fit(b2f * ib, o2) * factor) * W;
        b.special_display.push_back(make_residual("psi1", b.psi_ext[1] - fit(psi1, ext)));

        const SuperVector<F> inside = lead - fit(a1f * b2f * ia * ib, o2) * W;
        const SuperVector<F> psi2 = fit(ib, o3).scaled_by_field(minus_i<F>()) * dplus(inside) +
                                    fit(assemble(b2f, d.beta[2].b) * ib, o3) * fit(d.psi2f, o3);
        b.special_display.push_back(make_residual("psi2", b.psi_ext[2] - fit(psi2, ext)));
    }
    return b;
}

template <class F>
std::array<SuperVector<F>, 4> cp2_component_residuals(const CP2Parts<F>& p)
{
    const auto orders = orders_of(p.psi0b[0]);
    require(orders.has_value(), ErrorKind::DimensionMismatch, "psi0b component 0 vanishes");
    const JetOrders o = orders->lowered(Direction::plus);
    const auto& a = p.alpha;
    const auto& b = p.beta;
    const F i = field_traits<F>::i();
    auto f = [&](const SuperVector<F>& v) { return fit(v, o); };
    auto s = [&](const SuperScalar<F>& x) { return fit(x, o); };

    SuperVector<F> eq1 = s(a[0].f) * f(p.psi0b) + s(a[1].f) * f(p.psi1b) - f(p.psi0f);
    SuperVector<F> eq2 = s(a[0].b) * f(p.psi0b) + s(a[1].b) * f(p.psi1b) - s(a[0].f) * f(p.psi0f) -
                         s(a[1].f) * f(p.psi1f) + scale(dplus(p.psi0b), i);
    SuperVector<F> eq3 = s(b[0].f) * f(p.psi0b) + s(b[1].f) * f(p.psi1b) + s(b[2].f) * f(p.psi2b) - f(p.psi1f);
    SuperVector<F> eq4 = s(b[0].b) * f(p.psi0b) + s(b[1].b) * f(p.psi1b) + s(b[2].b) * f(p.psi2b) -
                         s(b[0].f) * f(p.psi0f) - s(b[1].f) * f(p.psi1f) - s(b[2].f) * f(p.psi2f) +
                         scale(dplus(p.psi1b), i);
    return {std::move(eq1), std::move(eq2), std::move(eq3), std::move(eq4)};
}

template <class F>
std::pair<SuperVector<F>, SuperVector<F>> system_residual_cp2(const SolutionBundle<F>& b)
{
    require(b.n == 3 && b.alpha.size() == 3, ErrorKind::DimensionMismatch, "not a CP2 bundle");
    auto r = system_residuals(b);
    return {r[0], r[1]};
}

template <class F>
ProjectorSet<F> bosonic_tower(const SuperVector<F>& u, int n)
{
    require(n >= 2 && static_cast<std::size_t>(n) == u.size(), ErrorKind::DimensionMismatch,
            "bosonic tower needs an n-vector");
    const AlgebraPtr alg = u[0].algebra();
    std::optional<JetOrders> full;
    std::optional<F> base;
    for (const auto& x : u) {
        for (const auto& t : x.terms()) {
            require(t.mask == 0, ErrorKind::ParityError, "bosonic tower needs a pure-body vector");
            full = t.coeff.orders();
            base = t.coeff.base();
        }
    }
    require(full.has_value(), ErrorKind::LinearDependence, "zero vector");
    require(is_holomorphic(u), ErrorKind::ParityError, "bosonic tower needs a holomorphic vector");
    const int w = std::min(full->plus - (n - 1), full->minus);
    require(w >= 0, ErrorKind::JetOrderExhausted, "not enough x+ order for the derivative tower");
    const JetOrders sq{w, w};

    using J = Jet<F>;
    auto body = [&](const SuperScalar<F>& x) { return x.body() ? *x.body() : J(*base, *full); };
    std::vector<J> cur;
    for (const auto& x : u) cur.push_back(body(x));

    // psi_j = d+^j u, truncated to the square orders.
    std::vector<std::vector<J>> psi;
    for (int j = 0; j < n; ++j) {
        std::vector<J> row;
        for (auto& c : cur) row.push_back(c.truncated(sq));
        psi.push_back(std::move(row));
        if (j + 1 < n)
            for (auto& c : cur) c = c.derive(Direction::plus);
    }
    auto dot = [&](const std::vector<J>& a, const std::vector<J>& b) {
        J acc(*base, sq);
        for (std::size_t k = 0; k < a.size(); ++k) acc += J::convolve(a[k].conjugate(), b[k]);
        return acc;
    };

    ProjectorSet<F> out;
    out.orders = sq;
    std::vector<std::vector<J>> zs;
    std::vector<J> inv;
    for (int j = 0; j < n; ++j) {
        std::vector<J> z = psi[j];
        for (int k = 0; k < j; ++k) {
            const J c = J::convolve(dot(zs[k], psi[j]), inv[k]);
            for (int m = 0; m < n; ++m) z[m] -= J::convolve(c, zs[k][m]);
        }
        const J n2 = dot(z, z);
        if (field_traits<F>::is_zero(n2.value()))
            raise(ErrorKind::LinearDependence, "derivative tower dependent at the base point");
        inv.push_back(n2.reciprocal());
        zs.push_back(z);
    }
    for (int j = 0; j < n; ++j) {
        std::vector<SuperScalar<F>> zv;
        SuperMatrix<F> P(alg, n);
        for (int a = 0; a < n; ++a) {
            zv.push_back(SuperScalar<F>::scalar(alg, zs[j][a]));
            for (int b = 0; b < n; ++b)
                P(a, b) = SuperScalar<F>::scalar(alg, J::convolve(J::convolve(zs[j][a], zs[j][b].conjugate()), inv[j]));
        }
        out.z.push_back(SuperVector<F>(std::move(zv)));
        out.P.push_back(std::move(P));
    }
    return out;
}

#define SCPN_INSTANTIATE_CP2(F)                                                                                    \
    template void validate_cp2_data(const CP2FreeData<F>&);                                                        \
    template SuperVector<F> compute_psi0f(const CP2FreeData<F>&);                                                  \
    template std::pair<SuperScalar<F>, SuperScalar<F>> compute_A0_A1(const CP2FreeData<F>&);                       \
    template SuperVector<F> compute_psi1b(const CP2FreeData<F>&);                                                  \
    template SuperVector<F> compute_psi1f(const CP2FreeData<F>&, const SuperVector<F>&, const SuperVector<F>&);    \
    template SuperVector<F> compute_psi2b(const CP2FreeData<F>&, const SuperVector<F>&, const SuperVector<F>&,     \
                                          const SuperVector<F>&);                                                  \
    template SolutionBundle<F> build_cp2_solution(const CP2FreeData<F>&);                                          \
    template SolutionBundle<F> build_cp2_special(CP2FreeData<F>);                                                  \
    template std::array<SuperVector<F>, 4> cp2_component_residuals(const CP2Parts<F>&);                            \
    template std::pair<SuperVector<F>, SuperVector<F>> system_residual_cp2(const SolutionBundle<F>&);              \
    template ProjectorSet<F> bosonic_tower(const SuperVector<F>&, int);

SCPN_INSTANTIATE_CP2(GaussRational)
SCPN_INSTANTIATE_CP2(Complex)

} // namespace scpn
