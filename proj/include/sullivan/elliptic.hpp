#ifndef SULLIVAN_ELLIPTIC_HPP
#define SULLIVAN_ELLIPTIC_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/model.hpp"

namespace sullivan {

/// Default degree window for cohomology scans: for an elliptic model the
/// generator degrees are bounded by 2p+1 in terms of the formal dimension p,
/// so inverting that bound, nothing lives beyond twice the top generator
/// degree plus two.
inline int default_degree_cap(const SullivanModel& m) {
    return 2 * m.top_degree() + 2;
}

struct EllipticCheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Necessary-condition scan for ellipticity within a degree cap. The tool
/// can falsify ellipticity but not certify it: a finite window cannot prove
/// that cohomology stops. "consistent" means the window shows a formal
/// dimension and every necessary check passes.
struct EllipticReport {
    int cap = 0;
    std::vector<std::size_t> betti;                       // H^0 .. H^cap
    std::optional<int> formal_dimension;                  // top nonzero, if < cap
    std::vector<std::pair<int, std::size_t>> homotopy_degrees;  // (m_j, dim V^{m_j})
    std::vector<EllipticCheckItem> checks;
    bool consistent = false;
};

inline EllipticReport elliptic_check(const SullivanModel& m, int cap = 0) {
    if (cap == 0) cap = default_degree_cap(m);
    if (cap < m.top_degree() + 1)
        throw compute_error("elliptic_check: cap " + std::to_string(cap) +
                            " is below top generator degree + 1; the report "
                            "would be unreliable");
    EllipticReport r;
    r.cap = cap;
    r.betti = betti(m.algebra(), cap);
    for (int d = 2; d <= m.top_degree(); ++d) {
        const std::size_t p = m.gens().ids_in_degree(d).size();
        if (p > 0) r.homotopy_degrees.emplace_back(d, p);
    }
    int top_nonzero = 0;
    for (int d = 0; d <= cap; ++d)
        if (r.betti[d] > 0) top_nonzero = d;
    if (top_nonzero < cap) r.formal_dimension = top_nonzero;

    if (!r.formal_dimension) {
        r.checks.push_back({"formal dimension",
                            false,
                            "cohomology persists to the cap (degree " +
                                std::to_string(cap) + "); no formal dimension "
                                "is visible in this window"});
        r.consistent = false;
        return r;
    }
    const int p = *r.formal_dimension;
    r.checks.push_back({"formal dimension", true,
                        "top nonzero cohomology in degree " + std::to_string(p)});
    {
        const bool top_one = r.betti[p] == 1;
        const bool below_zero = p == 0 || r.betti[p - 1] == 0;
        r.checks.push_back({"top class",
                            top_one && below_zero,
                            "dim H^p = " + std::to_string(r.betti[p]) +
                                ", dim H^{p-1} = " +
                                std::to_string(p == 0 ? 0 : r.betti[p - 1])});
    }
    {
        bool ok = true;
        std::string bad;
        for (const auto& [deg, dim] : r.homotopy_degrees)
            if (deg >= 2 * p + 2) {
                ok = false;
                bad = "generators in degree " + std::to_string(deg);
            }
        r.checks.push_back({"homotopy window", ok,
                            ok ? "no generators in degrees >= " +
                                     std::to_string(2 * p + 2)
                               : bad});
    }
    {
        const std::size_t dim_vp = m.gens().ids_in_degree(p).size();
        r.checks.push_back({"top homotopy rank", dim_vp <= 1,
                            "dim V^p = " + std::to_string(dim_vp)});
    }
    {
        bool ok = true;
        std::string bad;
        for (int i = 0; i <= p; ++i)
            if (r.betti[i] != r.betti[p - i]) {
                ok = false;
                bad = "dim H^" + std::to_string(i) + " = " +
                      std::to_string(r.betti[i]) + " but dim H^" +
                      std::to_string(p - i) + " = " + std::to_string(r.betti[p - i]);
                break;
            }
        r.checks.push_back(
            {"duality dimensions", ok, ok ? "dim H^i = dim H^{p-i} throughout" : bad});
    }
    r.consistent = true;
    for (const auto& c : r.checks) r.consistent = r.consistent && c.pass;
    return r;
}

/// Purity scan: d vanishes on even generators and sends odd generators into
/// the even subalgebra; combined with dim V^even = dim V^odd this is the
/// model-side criterion for vanishing odd cohomology, which is also checked
/// directly within the cap.
struct PurityReport {
    bool d_even_zero = true;
    bool d_odd_in_even = true;
    bool pure = true;                       // both of the above
    std::size_t dim_v_even = 0, dim_v_odd = 0;
    bool dims_equal = false;
    bool criterion = false;                 // pure and dims equal
    int cap = 0;
    std::vector<int> odd_nonzero_h;         // odd degrees <= cap with H != 0
    bool h_odd_vanishes = false;
    bool agreement = false;                 // criterion == h_odd_vanishes
};

inline PurityReport f0_check(const SullivanModel& m, int cap = 0) {
    if (cap == 0) cap = default_degree_cap(m);
    PurityReport r;
    r.cap = cap;
    for (GenId g = 0; g < m.gens().count(); ++g) {
        const bool odd = m.gens().degree_of(g) & 1;
        (odd ? r.dim_v_odd : r.dim_v_even) += 1;
        const GcaElement& dv = m.dga().d_of(g);
        if (dv.is_zero()) continue;
        if (!odd) r.d_even_zero = false;
        if (odd) {
            for (const auto& [mono, c] : dv.terms())
                for (const auto& [h, e] : mono.factors())
                    if (m.gens().degree_of(h) & 1) r.d_odd_in_even = false;
        }
    }
    r.pure = r.d_even_zero && r.d_odd_in_even;
    r.dims_equal = r.dim_v_even == r.dim_v_odd;
    r.criterion = r.pure && r.dims_equal;
    const std::vector<std::size_t> b = betti(m.algebra(), cap);
    for (int d = 1; d <= cap; d += 2)
        if (b[d] > 0) r.odd_nonzero_h.push_back(d);
    r.h_odd_vanishes = r.odd_nonzero_h.empty();
    r.agreement = r.criterion == r.h_odd_vanishes;
    return r;
}

/// One factor of the ambient group of the self-equivalence embedding:
/// at homotopy degree m_j, the Hom-space L^{m_j} = Hom(V^{m_j},
/// H^{m_j}(Lambda V^{<m_j})) extended by GL(p_j, Q).
struct EmbeddingFactor {
    int degree = 0;       // m_j
    std::size_t p = 0;    // dim V^{m_j}
    std::size_t dim_l = 0;  // dim L^{m_j}, computed from truncation cohomology
};

/// The target group the self-equivalence group embeds into, as structured
/// data plus printable forms. In strings, "A : B" is a split extension with
/// normal factor A, " x " a direct product; factors are listed from the top
/// homotopy degree down, each labelled by its degree.
struct EmbeddingReport {
    std::vector<EmbeddingFactor> factors;  // ascending degree
    bool assume_finite = false;
    bool f0 = false;  // purity criterion confirmed by vanishing odd cohomology

    /// Full ambient product, degrees descending.
    std::string ambient() const {
        if (factors.empty()) return "trivial group";
        std::string out;
        for (std::size_t i = factors.size(); i-- > 0;) {
            const EmbeddingFactor& f = factors[i];
            if (!out.empty()) out += " x ";
            const std::string gl = "GL(" + std::to_string(f.p) + ",Q)";
            if (i == 0)
                out += gl;  // the bottom degree carries no Hom factor
            else
                out += "(L^" + std::to_string(f.degree) + " : " + gl + ")";
        }
        return out;
    }

    /// Ambient product with zero-dimensional Hom factors elided.
    std::string reduced() const {
        if (factors.empty()) return "trivial group";
        std::string out;
        for (std::size_t i = factors.size(); i-- > 0;) {
            const EmbeddingFactor& f = factors[i];
            if (!out.empty()) out += " x ";
            const std::string gl = "GL(" + std::to_string(f.p) + ",Q)";
            if (i == 0 || f.dim_l == 0)
                out += gl;
            else
                out += "(L^" + std::to_string(f.degree) + " : " + gl + ")";
        }
        return out;
    }

    /// The finite-group form: a product of general linear groups, degrees
    /// ascending.
    std::string finite_form() const {
        if (factors.empty()) return "trivial group";
        std::string out;
        for (const EmbeddingFactor& f : factors) {
            if (!out.empty()) out += " x ";
            out += "GL(" + std::to_string(f.p) + ",Q)";
        }
        return out;
    }
};

/// Build the embedding report: for each homotopy degree m_j (ascending),
/// p_j = dim V^{m_j} and dim L^{m_j} = p_j * dim H^{m_j}(Lambda V^{<m_j}),
/// the latter computed from truncation cohomology -- never assumed, so the
/// structural vanishing L^{m_1} = 0 (and L^{odd} = 0 for pure models with
/// vanishing odd cohomology) is visible as data.
inline EmbeddingReport embedding_report(const SullivanModel& m, bool assume_finite,
                                        bool force = false) {
    const EllipticReport ell = elliptic_check(m);
    if (!ell.consistent && !force)
        throw compute_error("embedding_report: the model fails the elliptic "
                            "consistency checks; pass force to override");
    EmbeddingReport r;
    r.assume_finite = assume_finite;
    const PurityReport purity = f0_check(m);
    r.f0 = purity.criterion && purity.h_odd_vanishes;
    for (const auto& [degree, p] : ell.homotopy_degrees) {
        EmbeddingFactor f;
        f.degree = degree;
        f.p = p;
        f.dim_l = p * CohomologyBasis::compute(m.truncated(degree - 1), degree).dim();
        r.factors.push_back(f);
    }
    return r;
}

}  // namespace sullivan

#endif
