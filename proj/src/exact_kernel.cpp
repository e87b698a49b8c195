#include "scpn/exact_kernel.hpp"

#include <map>
#include <optional>

#ifdef SCPN_HAVE_OPENMP
#include <omp.h>
#endif

namespace scpn {

namespace kernels {

namespace {

using Exact = Jet<GaussRational>;

struct Cell {
    int p;
    int q;
    std::size_t index;
};

// One operand rewritten as Gaussian-integer tables over a common denominator.
struct IntegerForm {
    mpz_class den{1};
    std::size_t cells = 0;
    std::vector<mpz_class> re;
    std::vector<mpz_class> im;
    std::vector<std::vector<Cell>> nonzero; // per term
};

template <class TermRange>
IntegerForm to_integer_form(const TermRange& jets, JetOrders orders)
{
    IntegerForm f;
    f.cells = orders.cells();
    for (const Exact* j : jets)
        for (const auto& x : j->cells()) {
            if (sgn(x.re()) != 0) mpz_lcm(f.den.get_mpz_t(), f.den.get_mpz_t(), x.re().get_den_mpz_t());
            if (sgn(x.im()) != 0) mpz_lcm(f.den.get_mpz_t(), f.den.get_mpz_t(), x.im().get_den_mpz_t());
        }
    f.re.resize(jets.size() * f.cells);
    f.im.resize(jets.size() * f.cells);
    f.nonzero.resize(jets.size());
    mpz_class scale;
    for (std::size_t t = 0; t < jets.size(); ++t) {
        const Exact& j = *jets[t];
        for (int p = 0; p <= orders.plus; ++p)
            for (int q = 0; q <= orders.minus; ++q) {
                const std::size_t c = static_cast<std::size_t>(p) * (orders.minus + 1) + q;
                const GaussRational& x = j.at(p, q);
                if (x.is_zero()) continue;
                const std::size_t k = t * f.cells + c;
                if (sgn(x.re()) != 0) {
                    mpz_divexact(scale.get_mpz_t(), f.den.get_mpz_t(), x.re().get_den_mpz_t());
                    f.re[k] = x.re().get_num() * scale;
                }
                if (sgn(x.im()) != 0) {
                    mpz_divexact(scale.get_mpz_t(), f.den.get_mpz_t(), x.im().get_den_mpz_t());
                    f.im[k] = x.im().get_num() * scale;
                }
                f.nonzero[t].push_back({p, q, c});
            }
    }
    return f;
}

struct Accumulator {
    std::vector<mpz_class> re;
    std::vector<mpz_class> im;
    explicit Accumulator(std::size_t n) : re(n), im(n) {}
};

// acc += sign * a[ta] (*) b[tb], truncated at `orders`.
void convolve_into(Accumulator& acc, const IntegerForm& a, std::size_t ta, const IntegerForm& b, std::size_t tb,
                   int sign, JetOrders orders)
{
    const std::size_t stride = static_cast<std::size_t>(orders.minus) + 1;
    for (const Cell& x : a.nonzero[ta]) {
        const mpz_class& ar = a.re[ta * a.cells + x.index];
        const mpz_class& ai = a.im[ta * a.cells + x.index];
        const bool ar_nz = sgn(ar) != 0, ai_nz = sgn(ai) != 0;
        for (const Cell& y : b.nonzero[tb]) {
            if (x.p + y.p > orders.plus || x.q + y.q > orders.minus) continue;
            const std::size_t out = static_cast<std::size_t>(x.p + y.p) * stride + static_cast<std::size_t>(x.q + y.q);
            const mpz_class& br = b.re[tb * b.cells + y.index];
            const mpz_class& bi = b.im[tb * b.cells + y.index];
            mpz_ptr re = acc.re[out].get_mpz_t();
            mpz_ptr im = acc.im[out].get_mpz_t();
            const bool br_nz = sgn(br) != 0, bi_nz = sgn(bi) != 0;
            if (sign > 0) {
                if (ar_nz && br_nz) mpz_addmul(re, ar.get_mpz_t(), br.get_mpz_t());
                if (ai_nz && bi_nz) mpz_submul(re, ai.get_mpz_t(), bi.get_mpz_t());
                if (ar_nz && bi_nz) mpz_addmul(im, ar.get_mpz_t(), bi.get_mpz_t());
                if (ai_nz && br_nz) mpz_addmul(im, ai.get_mpz_t(), br.get_mpz_t());
            } else {
                if (ar_nz && br_nz) mpz_submul(re, ar.get_mpz_t(), br.get_mpz_t());
                if (ai_nz && bi_nz) mpz_addmul(re, ai.get_mpz_t(), bi.get_mpz_t());
                if (ar_nz && bi_nz) mpz_submul(im, ar.get_mpz_t(), bi.get_mpz_t());
                if (ai_nz && br_nz) mpz_submul(im, ai.get_mpz_t(), br.get_mpz_t());
            }
        }
    }
}

Exact from_accumulator(const Accumulator& acc, const mpz_class& den, const GaussRational& base, JetOrders orders)
{
    Exact out(base, orders);
    auto cells = out.cells();
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (sgn(acc.re[k]) == 0 && sgn(acc.im[k]) == 0) continue;
        mpq_class re(acc.re[k], den), im(acc.im[k], den);
        cells[k] = GaussRational(std::move(re), std::move(im));
    }
    return out;
}

} // namespace

int kernel_threads()
{
#ifdef SCPN_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Jet<GaussRational> fraction_free_jet_product(const Jet<GaussRational>& a, const Jet<GaussRational>& b)
{
    a.check_compatible(b);
    const JetOrders orders = a.orders();
    std::vector<const Exact*> ja{&a}, jb{&b};
    IntegerForm fa = to_integer_form(ja, orders);
    IntegerForm fb = to_integer_form(jb, orders);
    Accumulator acc(orders.cells());
    convolve_into(acc, fa, 0, fb, 0, 1, orders);
    mpz_class den = fa.den * fb.den;
    return from_accumulator(acc, den, a.base(), orders);
}

ExactSuper fraction_free_product(const ExactSuper& a, const ExactSuper& b)
{
    a.check_algebra(b);
    ExactSuper out(a.algebra());
    if (a.is_zero() || b.is_zero()) return out;

    const Exact& proto = a.terms().front().coeff;
    for (const auto& t : a.terms()) proto.check_compatible(t.coeff);
    for (const auto& t : b.terms()) proto.check_compatible(t.coeff);
    const JetOrders orders = proto.orders();

    std::vector<const Exact*> ja, jb;
    for (const auto& t : a.terms()) ja.push_back(&t.coeff);
    for (const auto& t : b.terms()) jb.push_back(&t.coeff);
    const IntegerForm fa = to_integer_form(ja, orders);
    const IntegerForm fb = to_integer_form(jb, orders);
    const mpz_class den = fa.den * fb.den;

    struct Pair {
        std::size_t i, j;
        int sign;
    };
    std::map<Mask, std::vector<Pair>> buckets;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Mask s = a.terms()[i].mask, t = b.terms()[j].mask;
            if (s & t) continue;
            buckets[s | t].push_back({i, j, mul_sign(s, t)});
        }

    std::vector<const std::pair<const Mask, std::vector<Pair>>*> work;
    work.reserve(buckets.size());
    for (const auto& kv : buckets) work.push_back(&kv);
    std::vector<std::optional<Exact>> results(work.size());

    const long n = static_cast<long>(work.size());
#ifdef SCPN_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (n > 4)
#endif
    for (long w = 0; w < n; ++w) {
        Accumulator acc(orders.cells());
        for (const Pair& pr : work[w]->second) convolve_into(acc, fa, pr.i, fb, pr.j, pr.sign, orders);
        Exact jet = from_accumulator(acc, den, proto.base(), orders);
        if (!jet.is_zero()) results[w] = std::move(jet);
    }

    for (std::size_t w = 0; w < work.size(); ++w)
        if (results[w]) out.push_sorted(work[w]->first, std::move(*results[w]));
    return out;
}

} // namespace kernels

template <>
Jet<GaussRational> jet_product(const Jet<GaussRational>& a, const Jet<GaussRational>& b)
{
    return kernels::fraction_free_jet_product(a, b);
}

template <>
Grassmann<Jet<GaussRational>> grassmann_product(const Grassmann<Jet<GaussRational>>& a,
                                                 const Grassmann<Jet<GaussRational>>& b)
{
    return kernels::fraction_free_product(a, b);
}

} // namespace scpn
