#include "helpers.hpp"

using namespace scpn;
using namespace scpn::test;

namespace {

const Mask eta1 = bit(AlgebraContext::eta(0));
const Mask etab1 = bit(AlgebraContext::eta_bar(0));
const Mask eta2 = bit(AlgebraContext::eta(1));

V vec(std::vector<S> c) { return V(std::move(c)); }

DiagonalGammaData<Q> diag_data(const Frame<Q>& fr, int n)
{
    DiagonalGammaData<Q> d{fr, n, poly(fr, {Q(1), lit("1/2")}, eta1), fr.constant(lit("2-i")), {}, {}};
    std::vector<S> u, f;
    for (int k = 0; k < n; ++k) {
        std::vector<Q> c(static_cast<std::size_t>(k + 1), Q(0));
        c[static_cast<std::size_t>(k)] = Q(1);
        c[0] += Q(k);
        u.push_back(poly(fr, c));
        f.push_back(poly(fr, {Q(k + 1), lit("i")}, k % 2 ? etab1 : eta1));
    }
    d.psi0b = vec(u);
    d.psi_last_f = vec(f);
    return d;
}

} // namespace

TEST_CASE("buildDiagonalGammaSolution")
{
    SUBCASE("eta.f = 0, eta.b = 1 gives the bosonic tower")
    {
        const auto fr = frame(1, {7, 7});
        auto d = diag_data(fr, 4);
        d.eta_f = fr.zero();
        d.eta_b = fr.one();
        d.psi_last_f = V::zeros(fr.algebra, 4);
        const auto b = build_diagonal_gamma_solution(d);
        CHECK(b.working_order() == 3);
        const auto tower = bosonic_tower(d.psi0b, 4);
        for (int j = 0; j < 4; ++j) CHECK(b.P[j] == fit(tower.P[j], square_orders(3)));
    }
    SUBCASE("N = 3 with alpha1 = beta2 = eta agrees with the CP2 special case")
    {
        const auto fr = frame(1, {7, 7});
        const auto d = diag_data(fr, 3);
        const auto diag = build_diagonal_gamma_solution(d);
        CP2FreeData<Q> c{fr, d.psi0b, {}, {}, d.psi_last_f};
        for (auto& a : c.alpha) a = {fr.zero(), fr.zero()};
        for (auto& x : c.beta) x = {fr.zero(), fr.zero()};
        c.alpha[1] = {d.eta_f, d.eta_b};
        c.beta[2] = {d.eta_f, d.eta_b};
        const auto cp2 = build_cp2_special(c);
        const JetOrders common = square_orders(std::min(diag.working_order(), cp2.working_order()));
        for (int j = 0; j < 3; ++j) CHECK(fit(diag.P[j], common) == fit(cp2.P[j], common));
    }
    SUBCASE("generic N = 4: eta psi_j = d+ psi_{j-1}")
    {
        const auto fr = frame(2, {8, 8});
        auto d = diag_data(fr, 4);
        d.eta_f = poly(fr, {Q(1), Q(2)}, eta1) + poly(fr, {lit("1/3")}, eta2);
        const auto b = build_diagonal_gamma_solution(d);
        CHECK(b.working_order() == 4);
        const S eta = fit(assemble(d.eta_f, d.eta_b), b.frame.orders);
        for (int j = 1; j < 4; ++j) {
            CHECK(is_zero(eta * b.psi[j] - super_derive(b.psi_ext[j - 1], Direction::plus)));
            CHECK(is_zero(system_residuals(b)[static_cast<std::size_t>(j - 1)]));
        }
    }
    SUBCASE("errors")
    {
        const auto fr = frame(1, {7, 7});
        auto d = diag_data(fr, 4);
        d.eta_b = fr.zero();
        CHECK(kind_of([&] { build_diagonal_gamma_solution(d); }) == ErrorKind::ZeroBody);
        d = diag_data(fr, 4);
        d.eta_b = poly(fr, {Q(1), Q(1)});
        CHECK(kind_of([&] { build_diagonal_gamma_solution(d); }) == ErrorKind::ConfigParseError);
        d = diag_data(fr, 4);
        d.eta_f = fr.one();
        CHECK(kind_of([&] { build_diagonal_gamma_solution(d); }) == ErrorKind::ParityError);
        d = diag_data(fr, 4);
        d.n = 5;
        CHECK(kind_of([&] { build_diagonal_gamma_solution(d); }) == ErrorKind::DimensionMismatch);
        CHECK(kind_of([&] { build_diagonal_gamma_solution(diag_data(frame(1, {4, 4}), 4)); }) == ErrorKind::JetOrderExhausted);
    }
}

TEST_CASE("checkGeneralConstraint")
{
    SUBCASE("diagonal bundle, every j")
    {
        const auto b = build_diagonal_gamma_solution(diag_data(frame(1, {8, 8}), 4));
        for (int j = 1; j <= 2; ++j) CHECK(is_zero(check_general_constraint(b, j)));
        CHECK(kind_of([&] { check_general_constraint(b, 3); }) == ErrorKind::IndexOutOfRange);
        CHECK(kind_of([&] { check_general_constraint(b, 0); }) == ErrorKind::IndexOutOfRange);
    }
    SUBCASE("CP2 bundle, j = 1")
    {
        const auto b = draw_bundle("cp2", 3, 1, {6, 6}, 5);
        CHECK(is_zero(check_general_constraint(b, 1)));
        // Gamma_1 psi_1 acquires a component along z_2 once psi_1 is moved.
        const auto p = perturb_bundle(b, Q(1), 0);
        CHECK(!is_zero(check_general_constraint(p, 1)));
    }
}

TEST_CASE("prop3Residuals")
{
    const auto b = build_diagonal_gamma_solution(diag_data(frame(1, {8, 8}), 4));
    const auto r = prop3_residuals(b);
    REQUIRE(r.size() == 4);
    // j = 0: d- z_0 = 0
    CHECK(is_zero(super_derive(b.z[0], Direction::minus)));
    for (const auto& [m, p] : r) {
        CHECK(is_zero(m));
        CHECK(is_zero(p));
    }
    SUBCASE("closed form of d- z_j")
    {
        const int w = b.working_order();
        const JetOrders om{w, w - 1};
        for (int j = 1; j < 4; ++j) {
            const S a = gconj(b.alpha[j][j]);
            const S ratio = inner(b.z[j], b.z[j]) * b.inv_norm2[j - 1];
            const V rhs = fit(-(a * ratio) * b.z[j - 1], om);
            CHECK(super_derive(b.z[j], Direction::minus) == rhs);
        }
    }
    SUBCASE("perturbed CP2 bundle")
    {
        const auto c = perturb_bundle(draw_bundle("cp2", 3, 1, {6, 6}, 6), Q(1), 0);
        bool any = false;
        for (const auto& [m, p] : prop3_residuals(c)) any = any || !is_zero(m) || !is_zero(p);
        CHECK(any);
    }
}

TEST_CASE("bMatrix")
{
    const auto b = build_diagonal_gamma_solution(diag_data(frame(1, {8, 8}), 4));
    const int w = b.working_order();
    const JetOrders op{w - 1, w};
    M sum(b.frame.algebra, 4);
    for (int j = 0; j < 4; ++j) {
        const M dP = super_derive(b.P[j], Direction::plus);
        CHECK(dP == fit(b_matrix(b, j) - b_matrix(b, j - 1), op));
        sum = sum + dP;
        CHECK(sum == fit(b_matrix(b, j), op));
    }
    CHECK(is_zero(b_matrix(b, -1)));
    CHECK(is_zero(b_matrix(b, 3)));
    CHECK(is_zero(sum));
    CHECK(kind_of([&] { b_matrix(b, 4); }) == ErrorKind::IndexOutOfRange);
    CHECK(kind_of([&] { b_matrix(b, -2); }) == ErrorKind::IndexOutOfRange);
}
