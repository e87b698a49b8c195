#include "scpn/cpn.hpp"

namespace scpn {

template <class F>
SolutionBundle<F> build_diagonal_gamma_solution(const DiagonalGammaData<F>& d)
{
    const int n = d.n;
    require(n >= 2, ErrorKind::DimensionMismatch, "N must be at least 2");
    require(d.psi0b.size() == static_cast<std::size_t>(n) && d.psi_last_f.size() == static_cast<std::size_t>(n),
            ErrorKind::DimensionMismatch, "psi0b and psi_last_f need N components");
    require(d.eta_f.is_odd(), ErrorKind::ParityError, "eta.f must be odd");
    require(d.eta_b.is_even(), ErrorKind::ParityError, "eta.b must be even");
    for (const auto& x : d.psi0b) require(x.is_even(), ErrorKind::ParityError, "psi0b must be even");
    for (const auto& x : d.psi_last_f) require(x.is_odd(), ErrorKind::ParityError, "psi_last_f must be odd");
    require(is_holomorphic(d.psi0b) && is_holomorphic(d.psi_last_f) && is_holomorphic(d.eta_f) &&
                is_holomorphic(d.eta_b),
            ErrorKind::ParityError, "diagonal data must be holomorphic");
    for (const auto& t : d.eta_b.terms())
        for (std::size_t c = 1; c < t.coeff.cells().size(); ++c)
            require(field_traits<F>::is_zero(t.coeff.cells()[c]), ErrorKind::ConfigParseError,
                    "eta.b must be constant in x+");

    const JetOrders top = d.frame.orders.lowered(Direction::plus, n - 1);
    require(top.plus >= 2, ErrorKind::JetOrderExhausted, "diagonal construction needs x+ order >= N+1");
    const int w = std::min(top.plus - 1, d.frame.orders.minus);
    require(w >= 1, ErrorKind::JetOrderExhausted, "working order below 1");

    const SuperScalar<F> m = fit(invert_even(d.eta_b, "eta.b"), top).scaled_by_field(-field_traits<F>::i());
    const SuperScalar<F> ef = fit(d.eta_f, top);

    // derivs[j] = d+^j psi0b at `top`; powers[j] = (-i/eta^b)^j.
    std::vector<SuperVector<F>> derivs;
    SuperVector<F> cur = d.psi0b;
    for (int j = 0; j < n; ++j) {
        derivs.push_back(fit(cur, top));
        if (j + 1 < n) cur = partial(cur, Direction::plus);
    }
    std::vector<SuperScalar<F>> powers{d.frame.with_orders(top).one()};
    for (int j = 1; j < n; ++j) powers.push_back(powers.back() * m);

    SolutionBundle<F> b;
    b.kind = "cpn-diagonal";
    b.n = n;
    b.frame = d.frame.with_orders(square_orders(w));
    const JetOrders ext = extended_orders(w);
    const SuperVector<F> last_f = fit(d.psi_last_f, top);
    for (int j = 0; j < n; ++j) {
        SuperVector<F> psib = powers[j] * derivs[j];
        SuperVector<F> psif = last_f;
        if (j == n - 1)
            psib = (ef * fit(invert_even(d.eta_b, "eta.b"), top)) * last_f + psib;
        else
            psif = (ef * powers[j + 1]) * derivs[j + 1];
        b.psi_ext.push_back(fit(assemble(psib, psif), ext));
    }
    const SuperScalar<F> eta = fit(assemble(d.eta_f, d.eta_b), square_orders(w));
    b.alpha.assign(n, {});
    for (int j = 1; j < n; ++j) {
        b.alpha[j].assign(j + 1, b.frame.zero());
        b.alpha[j][j] = eta;
    }
    b.psi0_full = d.psi0b;
    finalize_bundle(b);
    return b;
}

template <class F>
SuperMatrix<F> complement_projector(const SolutionBundle<F>& b, int j)
{
    SuperMatrix<F> m = SuperMatrix<F>::identity(b.frame, b.n);
    for (int k = 0; k <= j && k < b.n; ++k) m = m - b.P[k];
    return m;
}

template <class F>
SuperVector<F> check_general_constraint(const SolutionBundle<F>& b, int j)
{
    require(j >= 1 && j <= b.n - 2, ErrorKind::IndexOutOfRange, "constraint index " + std::to_string(j));
    return complement_projector(b, j) * b.gamma_psi[j];
}

template <class F>
std::vector<std::pair<SuperVector<F>, SuperVector<F>>> prop3_residuals(const SolutionBundle<F>& b)
{
    const int w = b.working_order();
    const JetOrders om{w, w - 1}, op{w - 1, w};
    std::vector<std::pair<SuperVector<F>, SuperVector<F>>> out;
    for (int j = 0; j < b.n; ++j) {
        SuperVector<F> minus = super_derive(b.z[j], Direction::minus);
        if (j >= 1) {
            const SuperScalar<F> c = inner(b.gamma_psi[j], b.z[j]) * b.inv_norm2[j - 1];
            minus = minus + fit(c * b.z[j - 1], om);
        }
        SuperVector<F> plus = super_derive(b.z[j] * b.inv_norm2[j], Direction::plus);
        if (j + 1 < b.n) {
            const SuperVector<F> rhs = b.inv_norm2[j] * (complement_projector(b, j) * b.gamma_psi[j + 1]);
            plus = plus - fit(rhs, op);
        }
        out.emplace_back(std::move(minus), std::move(plus));
    }
    return out;
}

template <class F>
SuperMatrix<F> b_matrix(const SolutionBundle<F>& b, int m)
{
    require(m >= -1 && m <= b.n - 1, ErrorKind::IndexOutOfRange, "B index " + std::to_string(m));
    if (m == -1 || m == b.n - 1) return SuperMatrix<F>(b.frame.algebra, b.n);
    const SuperVector<F> v = b.inv_norm2[m] * (complement_projector(b, m) * b.gamma_psi[m + 1]);
    return outer(v, b.z[m]);
}

#define SCPN_INSTANTIATE_CPN(F)                                                                                    \
    template SolutionBundle<F> build_diagonal_gamma_solution(const DiagonalGammaData<F>&);                         \
    template SuperVector<F> check_general_constraint(const SolutionBundle<F>&, int);                               \
    template std::vector<std::pair<SuperVector<F>, SuperVector<F>>> prop3_residuals(const SolutionBundle<F>&);     \
    template SuperMatrix<F> b_matrix(const SolutionBundle<F>&, int);                                               \
    template SuperMatrix<F> complement_projector(const SolutionBundle<F>&, int);

SCPN_INSTANTIATE_CPN(GaussRational)
SCPN_INSTANTIATE_CPN(Complex)

} // namespace scpn
