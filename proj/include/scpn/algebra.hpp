#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace scpn {

/// Generator subset; bit g set means generator g is present. Monomials are
/// always read in ascending generator order.
using Mask = std::uint32_t;

inline constexpr int kMaxGenerators = 16;

/// Sign of e_S * e_T for disjoint S, T: (-1)^(number of pairs s in S,
/// t in T with s > t).
inline int mul_sign(Mask s, Mask t)
{
    int crossings = 0;
    while (t) {
        int g = std::countr_zero(t);
        t &= t - 1;
        crossings += std::popcount(s >> (g + 1));
    }
    return (crossings & 1) ? -1 : 1;
}

/// Sign picked up by the left derivative d/d(gen) acting on e_S.
inline int deriv_sign(Mask s, int gen)
{
    Mask below = s & ((Mask{1} << gen) - 1);
    return (std::popcount(below) & 1) ? -1 : 1;
}

inline int degree(Mask s) { return std::popcount(s); }

/// Generator layout: 0 = theta+, 1 = theta-, 2a+2 = eta_a, 2a+3 = conj(eta_a).
/// The conjugation involution swaps the members of each pair.
class AlgebraContext {
public:
    static constexpr int theta_plus = 0;
    static constexpr int theta_minus = 1;

    explicit AlgebraContext(int pair_count);

    int pair_count() const { return pair_count_; }
    int generator_count() const { return 2 * pair_count_ + 2; }
    std::size_t dimension() const { return std::size_t{1} << generator_count(); }
    Mask full_mask() const { return static_cast<Mask>(dimension() - 1); }

    static int eta(int a) { return 2 * a + 2; }
    static int eta_bar(int a) { return 2 * a + 3; }
    static int partner(int g) { return g ^ 1; }

    /// Image of e_S under conjugation, as (sign, mask).
    Mask conj_mask(Mask s) const { return conj_mask_[s]; }
    int conj_sign(Mask s) const { return conj_sign_[s]; }

    std::string generator_name(int g) const;

    friend bool operator==(const AlgebraContext& a, const AlgebraContext& b)
    {
        return a.pair_count_ == b.pair_count_;
    }

private:
    int pair_count_;
    std::vector<Mask> conj_mask_;
    std::vector<signed char> conj_sign_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraContext>;

/// Throws IndexOutOfRange when 2K+2 exceeds kMaxGenerators.
AlgebraPtr make_algebra(int pair_count);

} // namespace scpn
