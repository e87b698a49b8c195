#include "scpn/algebra.hpp"

#include "scpn/errors.hpp"

namespace scpn {

AlgebraContext::AlgebraContext(int pair_count) : pair_count_(pair_count)
{
    if (pair_count < 0 || 2 * pair_count + 2 > kMaxGenerators)
        raise(ErrorKind::IndexOutOfRange, "pair count " + std::to_string(pair_count) + " outside [0, 7]");

    const std::size_t dim = dimension();
    conj_mask_.resize(dim);
    conj_sign_.resize(dim);
    std::vector<int> seq;
    for (Mask s = 0; s < dim; ++s) {
        // (g_i1 ... g_ik)^dagger = g_ik^dagger ... g_i1^dagger, then sort.
        seq.clear();
        Mask image = 0;
        for (int g = generator_count() - 1; g >= 0; --g) {
            if (s & (Mask{1} << g)) {
                seq.push_back(partner(g));
                image |= Mask{1} << partner(g);
            }
        }
        int inversions = 0;
        for (std::size_t a = 0; a < seq.size(); ++a)
            for (std::size_t b = a + 1; b < seq.size(); ++b)
                if (seq[a] > seq[b]) ++inversions;
        conj_mask_[s] = image;
        conj_sign_[s] = (inversions & 1) ? -1 : 1;
    }
}

std::string AlgebraContext::generator_name(int g) const
{
    if (g == theta_plus) return "th+";
    if (g == theta_minus) return "th-";
    int a = (g - 2) / 2 + 1;
    return (g % 2 == 0 ? "eta" : "etabar") + std::to_string(a);
}

AlgebraPtr make_algebra(int pair_count) { return std::make_shared<const AlgebraContext>(pair_count); }

} // namespace scpn
