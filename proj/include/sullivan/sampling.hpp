#ifndef SULLIVAN_SAMPLING_HPP
#define SULLIVAN_SAMPLING_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/gca.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/model.hpp"
#include "sullivan/morphism.hpp"
#include "sullivan/whitehead.hpp"

namespace sullivan {

/// Seeded source of small integers. Bounded draws go through a plain modulo
/// reduction of the raw 64-bit stream rather than std::uniform_int_distribution,
/// whose output is implementation-defined; reproducibility across platforms
/// matters more here than the negligible modulo bias.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform-ish integer in [lo, hi], inclusive.
    int range(int lo, int hi) {
        if (hi < lo) throw compute_error("SampleRng::range: empty interval");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(raw() % span);
    }

private:
    std::mt19937_64 gen_;
};

inline QMatrix random_matrix(SampleRng& rng, std::size_t rows, std::size_t cols,
                             int lo = -3, int hi = 3) {
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rng.range(lo, hi);
    return m;
}

inline QMatrix random_invertible(SampleRng& rng, std::size_t n, int lo = -3,
                                 int hi = 3) {
    if (n == 0) return QMatrix(0, 0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        QMatrix m = random_matrix(rng, n, n, lo, hi);
        if (inverse(m)) return m;
    }
    throw invariant_error("random_invertible: no invertible matrix found");
}

/// Draw a random self-equivalence of a view by extending generator by
/// generator in ascending degree: each image solves the chain condition
/// (particular solution of d x = gamma(d v), which is always consistent)
/// plus a random combination of the per-degree kernel of d. Attempts whose
/// linear parts fail to be invertible are redrawn.
inline std::optional<DgaMorphism> sample_self_equivalence(const Algebra& a,
                                                          SampleRng& rng,
                                                          int tries = 60) {
    const std::vector<GenId> ids = a.gen_ids();  // ascending degree
    for (int attempt = 0; attempt < tries; ++attempt) {
        std::vector<GcaElement> images(a.gens().count());
        bool failed = false;
        for (GenId g : ids) {
            const int deg = a.gens().degree_of(g);
            const GradedPieceBasis piece = a.piece(deg);
            const GradedPieceBasis piece_up = a.piece(deg + 1);
            const GcaElement target = apply_algebra_map(a.dga->d_of(g), images, a.set());
            const QMatrix d_mat = a.d_matrix(deg);
            const std::optional<std::vector<Rational>> particular =
                solve(d_mat, coords(target, piece_up));
            if (!particular) {
                failed = true;  // cannot happen for chain-consistent draws
                break;
            }
            std::vector<Rational> x = *particular;
            for (const std::vector<Rational>& k : kernel_basis(d_mat)) {
                const int c = rng.range(-2, 2);
                if (c == 0) continue;
                for (std::size_t i = 0; i < x.size(); ++i) x[i] += Rational(c) * k[i];
            }
            images[g] = element_of(a.set(), piece, x);
        }
        if (failed) continue;
        DgaMorphism candidate = DgaMorphism::make(a, a, std::move(images));
        if (candidate.is_equivalence()) return candidate;
    }
    return std::nullopt;
}

/// Draw members of D^n. Each draw starts from a random self-equivalence
/// gamma of the truncation; a compatible rho is first sought by filtering a
/// few random invertible matrices through the membership test, and when the
/// compatibility equation pins rho down (b^n of high rank) it is instead
/// derived by solving b rho = H(gamma) b column by column. Every returned
/// pair carries a re-checked membership certificate.
inline std::vector<DnElement> sample_dn(const SullivanModel& m, int n,
                                        std::size_t count, SampleRng& rng) {
    const Algebra trunc = m.truncated(n - 1);
    const std::size_t p = m.gens().ids_in_degree(n).size();
    const QMatrix b = b_matrix(m, n);
    const std::vector<std::vector<Rational>> b_kernel = kernel_basis(b);

    std::vector<DnElement> out;
    int guard = 0;
    while (out.size() < count) {
        if (++guard > 200 * static_cast<int>(count) + 200)
            throw compute_error("sample_dn: sampling failed to produce enough members");
        std::optional<DgaMorphism> gamma = sample_self_equivalence(trunc, rng);
        if (!gamma) continue;

        std::optional<QMatrix> rho;
        if (b.is_zero() || p == 0) {
            rho = random_invertible(rng, p);
        } else {
            for (int attempt = 0; attempt < 6 && !rho; ++attempt) {
                QMatrix candidate = random_invertible(rng, p);
                if (dn_membership(m, n, candidate, *gamma).member) rho = candidate;
            }
            if (!rho) {
                // Derive rho: solve b rho_j = (H(gamma) b)_j, then perturb by
                // the kernel of b while keeping invertibility.
                const QMatrix target = induced_on_cohomology(*gamma, n + 1) * b;
                QMatrix derived(p, p);
                bool ok = true;
                for (std::size_t j = 0; j < p && ok; ++j) {
                    const auto col = solve(b, target.column(j));
                    if (!col) {
                        ok = false;
                        break;
                    }
                    for (std::size_t i = 0; i < p; ++i) derived.at(i, j) = (*col)[i];
                }
                if (ok) {
                    for (int attempt = 0; attempt < 20 && !rho; ++attempt) {
                        QMatrix candidate = derived;
                        for (const auto& k : b_kernel) {
                            const int c = attempt == 0 ? 0 : rng.range(-2, 2);
                            if (c == 0) continue;
                            const std::size_t j =
                                static_cast<std::size_t>(rng.range(0, static_cast<int>(p) - 1));
                            for (std::size_t i = 0; i < p; ++i)
                                candidate.at(i, j) += Rational(c) * k[i];
                        }
                        if (inverse(candidate) &&
                            dn_membership(m, n, candidate, *gamma).member)
                            rho = candidate;
                    }
                }
            }
        }
        if (!rho) continue;
        if (!dn_membership(m, n, *rho, *gamma).member)
            throw invariant_error("sample_dn: accepted pair fails membership");
        out.push_back(DnElement{*rho, *gamma});
    }
    return out;
}

/// Random kernel data: a matrix Hom(V^n, H^n(Lambda V^{<=n-1})).
inline QMatrix sample_hom(const SullivanModel& m, int n, SampleRng& rng, int lo = -3,
                          int hi = 3) {
    const std::size_t rows =
        CohomologyBasis::compute(m.truncated(n - 1), n).dim();
    const std::size_t cols = m.gens().ids_in_degree(n).size();
    return random_matrix(rng, rows, cols, lo, hi);
}

}  // namespace sullivan

#endif
