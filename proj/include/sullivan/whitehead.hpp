#ifndef SULLIVAN_WHITEHEAD_HPP
#define SULLIVAN_WHITEHEAD_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/gca.hpp"
#include "sullivan/homotopy.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/model.hpp"
#include "sullivan/morphism.hpp"
#include "sullivan/print.hpp"

namespace sullivan {

/// Exactness certificate at one node of the long sequence: the incoming and
/// outgoing maps compose to zero, and their ranks fill the middle dimension.
/// Over a field the two conditions together are equivalent to im = ker.
struct SequenceNode {
    std::string at;  // human-readable location, e.g. "H^4(V<=2)" or "V^3"
    std::size_t dim_middle = 0;
    std::size_t rank_in = 0;
    std::size_t rank_out = 0;
    bool composite_zero = true;
    bool exact() const { return composite_zero && rank_in + rank_out == dim_middle; }
};

/// One degree window of the sequence
///   V^n --b--> H^{n+1}(Lambda V^{<=n-1}) --incl--> H^{n+1}(Lambda V) --lin--> V^{n+1}
/// where b(v) = [d v] in the truncation, incl is induced by the inclusion,
/// and lin is the projection of a class onto the linear part of its
/// representative (well defined because differentials are decomposable).
struct WhiteheadData {
    int n = 0;
    std::size_t dim_v = 0, dim_h_trunc = 0, dim_h_full = 0, dim_v_next = 0;
    QMatrix b;     // dim_h_trunc x dim_v
    QMatrix incl;  // dim_h_full x dim_h_trunc
    QMatrix lin;   // dim_v_next x dim_h_full
    bool well_defined = true;
    std::string defect;  // why the window could not be formed (broken input)
};

struct WhiteheadSequence {
    std::vector<WhiteheadData> windows;  // n = 1 .. n_max
    std::vector<SequenceNode> nodes;

    bool all_well_defined() const {
        for (const auto& w : windows)
            if (!w.well_defined) return false;
        return true;
    }
    bool all_exact() const {
        if (!all_well_defined()) return false;
        for (const auto& node : nodes)
            if (!node.exact()) return false;
        return true;
    }
    std::string first_failure() const {
        for (const auto& w : windows)
            if (!w.well_defined) return "window n=" + std::to_string(w.n) + ": " + w.defect;
        for (const auto& node : nodes)
            if (!node.exact())
                return "node " + node.at + ": rank_in=" + std::to_string(node.rank_in) +
                       " + rank_out=" + std::to_string(node.rank_out) +
                       " vs dim=" + std::to_string(node.dim_middle) +
                       (node.composite_zero ? "" : ", composite nonzero");
        return "";
    }
};

/// Report-style computation of the sequence on any differential algebra
/// view: never throws on mathematical failure, records it instead. Used both
/// for display and as the negative control against corrupted differentials.
inline WhiteheadSequence whitehead_certificates(const Algebra& full, int n_max) {
    WhiteheadSequence seq;
    for (int n = 1; n <= n_max; ++n) {
        WhiteheadData w;
        w.n = n;
        try {
            const Algebra trunc = full.truncated(n - 1);
            const CohomologyBasis h_trunc = CohomologyBasis::compute(trunc, n + 1);
            const CohomologyBasis h_full = CohomologyBasis::compute(full, n + 1);
            const std::vector<GenId> v_n = full.ids_in_degree(n);
            const std::vector<GenId> v_next = full.ids_in_degree(n + 1);
            w.dim_v = v_n.size();
            w.dim_h_trunc = h_trunc.dim();
            w.dim_h_full = h_full.dim();
            w.dim_v_next = v_next.size();

            std::vector<std::vector<Rational>> b_cols;
            for (GenId v : v_n)
                b_cols.push_back(h_trunc.class_coords(full.dga->d_of(v)).coords);
            w.b = QMatrix::from_columns(h_trunc.dim(), b_cols);

            std::vector<std::vector<Rational>> incl_cols;
            for (const GcaElement& rep : h_trunc.representatives())
                incl_cols.push_back(h_full.class_coords(rep).coords);
            w.incl = QMatrix::from_columns(h_full.dim(), incl_cols);

            std::vector<std::vector<Rational>> lin_cols;
            for (const GcaElement& rep : h_full.representatives())
                lin_cols.push_back(linear_coords(full, rep, n + 1));
            w.lin = QMatrix::from_columns(v_next.size(), lin_cols);
        } catch (const error& e) {
            w.well_defined = false;
            w.defect = e.what();
        }
        seq.windows.push_back(std::move(w));
    }

    for (std::size_t i = 0; i < seq.windows.size(); ++i) {
        const WhiteheadData& w = seq.windows[i];
        if (!w.well_defined) continue;
        const std::string trunc_label = "V<=" + std::to_string(w.n - 1);
        SequenceNode at_h_trunc{
            "H^" + std::to_string(w.n + 1) + "(" + trunc_label + ")",
            w.dim_h_trunc, rank(w.b), rank(w.incl), (w.incl * w.b).is_zero()};
        seq.nodes.push_back(std::move(at_h_trunc));
        SequenceNode at_h_full{"H^" + std::to_string(w.n + 1) + "(V)", w.dim_h_full,
                               rank(w.incl), rank(w.lin), (w.lin * w.incl).is_zero()};
        seq.nodes.push_back(std::move(at_h_full));
        if (i + 1 < seq.windows.size() && seq.windows[i + 1].well_defined) {
            const WhiteheadData& next = seq.windows[i + 1];
            SequenceNode at_v{"V^" + std::to_string(next.n), next.dim_v, rank(w.lin),
                              rank(next.b), (next.b * w.lin).is_zero()};
            seq.nodes.push_back(std::move(at_v));
        }
    }
    return seq;
}

/// The sequence of a validated model, with exactness enforced: any failed
/// certificate is an implementation bug and raises a hard error.
inline WhiteheadSequence whitehead_sequence(const SullivanModel& m, int n_max) {
    WhiteheadSequence seq = whitehead_certificates(m.algebra(), n_max);
    if (!seq.all_exact())
        throw invariant_error("Whitehead sequence certificate failed: " +
                              seq.first_failure());
    return seq;
}

/// Matrix of H^degree(gamma) on the cohomology basis of gamma's view.
inline QMatrix induced_on_cohomology(const DgaMorphism& gamma, int degree) {
    if (!gamma.is_self_map())
        throw compute_error("induced_on_cohomology: expected a self-map");
    const CohomologyBasis h = CohomologyBasis::compute(gamma.src(), degree);
    std::vector<std::vector<Rational>> cols;
    for (const GcaElement& rep : h.representatives())
        cols.push_back(h.class_coords(gamma.apply(rep)).coords);
    return QMatrix::from_columns(h.dim(), cols);
}

/// b^n of a model: the matrix V^n -> H^{n+1}(Lambda V^{<=n-1}) of classes of
/// differentials, in the deterministic cohomology basis of the truncation.
inline QMatrix b_matrix(const SullivanModel& m, int n) {
    const Algebra trunc = m.truncated(n - 1);
    const CohomologyBasis h = CohomologyBasis::compute(trunc, n + 1);
    std::vector<std::vector<Rational>> cols;
    for (GenId v : m.gens().ids_in_degree(n))
        cols.push_back(h.class_coords(m.dga().d_of(v)).coords);
    return QMatrix::from_columns(h.dim(), cols);
}

/// Certified membership of a pair (rho, gamma) in D^n: the compatibility
/// square H^{n+1}(gamma) b = b rho, with both sides returned.
struct DnMembership {
    bool member = false;
    QMatrix lhs;  // H^{n+1}(gamma) * b
    QMatrix rhs;  // b * rho
};

struct DnElement {
    QMatrix rho;         // invertible on V^n
    DgaMorphism gamma;   // self-equivalence of Lambda V^{<=n-1}
};

inline DnMembership dn_membership(const SullivanModel& m, int n, const QMatrix& rho,
                                  const DgaMorphism& gamma) {
    const Algebra trunc = m.truncated(n - 1);
    if (!gamma.src().same_as(trunc) || !gamma.dst().same_as(trunc))
        throw compute_error("dn_membership: gamma is not a self-map of the truncation at " +
                            std::to_string(n - 1));
    if (!gamma.is_equivalence())
        throw compute_error("dn_membership: gamma is not an equivalence");
    const std::size_t p = m.gens().ids_in_degree(n).size();
    if (rho.rows() != p || rho.cols() != p)
        throw compute_error("dn_membership: rho has the wrong size");
    if (p > 0 && !inverse(rho))
        throw compute_error("dn_membership: rho is not invertible");
    const QMatrix b = b_matrix(m, n);
    DnMembership cert;
    cert.lhs = induced_on_cohomology(gamma, n + 1) * b;
    cert.rhs = b * rho;
    cert.member = cert.lhs == cert.rhs;
    return cert;
}

/// The #-variant D^n_# imposes rho = id and asks gamma to act as the
/// identity on indecomposables; membership then reads b = H^{n+1}(gamma) b.
struct DnSharpMembership {
    bool gamma_in_e_sharp = false;  // linear part of gamma is the identity
    bool square_commutes = false;   // H^{n+1}(gamma) b = b
    bool member() const { return gamma_in_e_sharp && square_commutes; }
};

inline DnSharpMembership dn_sharp_membership(const SullivanModel& m, int n,
                                             const DgaMorphism& gamma) {
    const std::size_t p = m.gens().ids_in_degree(n).size();
    const DnMembership base = dn_membership(m, n, QMatrix::identity(p), gamma);
    DnSharpMembership cert;
    cert.gamma_in_e_sharp = gamma.linear_part_is_identity();
    cert.square_commutes = base.member;
    return cert;
}

/// Group law of D^n (componentwise; matches Psi of a composite).
inline DnElement dn_mul(const DnElement& a, const DnElement& b) {
    return DnElement{a.rho * b.rho, compose(a.gamma, b.gamma)};
}

/// Psi_n: a self-equivalence beta of Lambda V^{<=n} maps to (linear part of
/// beta on V^n, restriction of beta below). The image always satisfies the
/// D^n compatibility; that functoriality is re-checked and a failure is a
/// hard error.
inline DnElement psi(const SullivanModel& m, int n, const DgaMorphism& beta) {
    const Algebra a = m.truncated(n);
    if (!beta.src().same_as(a) || !beta.dst().same_as(a))
        throw compute_error("psi: beta is not a self-map of the truncation at " +
                            std::to_string(n));
    if (!beta.is_equivalence())
        throw compute_error("psi: beta is not an equivalence");
    DnElement d{beta.linear_part(n), beta.restrict(n - 1)};
    const DnMembership cert = dn_membership(m, n, d.rho, d.gamma);
    if (!cert.member)
        throw invariant_error("psi: image violates the D^n compatibility "
                              "(functoriality failure): H(gamma) b = " +
                              to_string(cert.lhs) + " but b rho = " + to_string(cert.rhs));
    return d;
}

namespace detail {

/// xi(v_j) = sum_i rho_{ij} v_i on the degree-n generators.
inline GcaElement rho_image(const SullivanModel& m, int n, const QMatrix& rho,
                            std::size_t j) {
    const std::vector<GenId> v_n = m.gens().ids_in_degree(n);
    GcaElement xi = GcaElement::zero(m.set());
    for (std::size_t i = 0; i < v_n.size(); ++i)
        xi += rho.at(i, j) * GcaElement::generator(m.set(), v_n[i]);
    return xi;
}

}  // namespace detail

/// The section sigma_n: extend (rho, gamma) in D^n to a self-equivalence
/// beta of Lambda V^{<=n} with beta = gamma below and
/// beta(v) = xi(v) + y_v, where d(y_v) = gamma(d v) - d(xi v). A solution
/// y_v exists precisely because of the membership equation; the solver's
/// deterministic choice makes sigma reproducible. Psi_n(sigma_n(d)) = d on
/// the nose.
///
/// `y_choice`, when given, overrides the solver's preimages (used for the
/// composition-law tests); each supplied y_v is checked to solve the same
/// equation.
inline DgaMorphism sigma(const SullivanModel& m, int n, const DnElement& d,
                         const std::map<GenId, GcaElement>* y_choice = nullptr) {
    const DnMembership cert = dn_membership(m, n, d.rho, d.gamma);
    if (!cert.member)
        throw compute_error("sigma: (rho, gamma) is not in D^n: H(gamma) b = " +
                            to_string(cert.lhs) + " but b rho = " + to_string(cert.rhs));
    const Algebra a = m.truncated(n);
    const Algebra trunc = m.truncated(n - 1);
    const CohomologyBasis h = CohomologyBasis::compute(trunc, n + 1);
    const std::vector<GenId> v_n = m.gens().ids_in_degree(n);

    std::vector<GcaElement> images(m.gens().count());
    for (GenId g : trunc.gen_ids()) images[g] = d.gamma.image_of(g);
    for (std::size_t j = 0; j < v_n.size(); ++j) {
        const GenId v = v_n[j];
        const GcaElement xi = detail::rho_image(m, n, d.rho, j);
        const GcaElement target = d.gamma.apply(m.dga().d_of(v)) - a.d(xi);
        GcaElement y;
        if (y_choice) {
            auto it = y_choice->find(v);
            y = it == y_choice->end() ? GcaElement::zero(m.set()) : it->second;
            if (!y.is_homogeneous_of(n) || !y.lies_in(n - 1) || a.d(y) != target)
                throw compute_error("sigma: supplied preimage for '" +
                                    m.gens().name_of(v) +
                                    "' does not solve d(y) = gamma(d v) - d(xi v)");
        } else {
            const CohomologyBasis::ClassCoords cc = h.class_coords(target);
            for (const Rational& c : cc.coords)
                if (c != 0)
                    throw invariant_error(
                        "sigma: no preimage despite certified membership on '" +
                        m.gens().name_of(v) + "'");
            y = cc.witness;
        }
        images[v] = xi + y;
    }
    return DgaMorphism::make(a, a, std::move(images));
}

/// Preimages under which sigma is multiplicative on a specific pair:
/// sigma(a) composed after sigma(b) sends v_j to
///   xi_a(xi_b(v_j)) + sum_i (rho_b)_{ij} y_{a,i} + gamma_a(y_{b,j}),
/// so feeding these z's into sigma for the product a*b reproduces the
/// composite on the nose (chain-map algebra shows d z_v equals the
/// defining equation's right-hand side for a*b).
inline std::map<GenId, GcaElement> sigma_composition_choice(const SullivanModel& m, int n,
                                                            const DnElement& a,
                                                            const DnElement& b) {
    const DgaMorphism sa = sigma(m, n, a);
    const DgaMorphism sb = sigma(m, n, b);
    const std::vector<GenId> v_n = m.gens().ids_in_degree(n);
    std::map<GenId, GcaElement> z;
    for (std::size_t j = 0; j < v_n.size(); ++j) {
        const GenId v = v_n[j];
        GcaElement z_v = a.gamma.apply(sb.image_of(v) - detail::rho_image(m, n, b.rho, j));
        for (std::size_t i = 0; i < v_n.size(); ++i)
            z_v += b.rho.at(i, j) *
                   (sa.image_of(v_n[i]) - detail::rho_image(m, n, a.rho, i));
        z[v] = z_v;
    }
    return z;
}

/// Theta on the kernel of Psi_n, general form: beta's restriction below
/// degree n need only be homotopic to the identity, with the homotopy
/// supplied; normalize_top trades it for equality and the cocycle
/// corrections y'_v are read off in H^n of the truncation. The returned
/// matrix represents f: V^n -> H^n(Lambda V^{<=n-1}), f(v) = [y'_v].
inline QMatrix theta_with_homotopy(const SullivanModel& m, int n,
                                   const DgaMorphism& beta, const Homotopy& f_below) {
    const Algebra a = m.truncated(n);
    if (!beta.src().same_as(a) || !beta.dst().same_as(a))
        throw compute_error("theta: beta is not a self-map of the truncation at " +
                            std::to_string(n));
    const std::vector<GenId> v_n = m.gens().ids_in_degree(n);
    for (GenId v : v_n)
        if (!(beta.image_of(v) - GcaElement::generator(m.set(), v)).lies_in(n - 1))
            throw compute_error("theta: beta is not of kernel shape: the linear part "
                                "on '" + m.gens().name_of(v) + "' moves");
    const NormalizedTop norm =
        normalize_top(beta, DgaMorphism::identity(a), n, f_below);
    const Algebra trunc = m.truncated(n - 1);
    const CohomologyBasis h = CohomologyBasis::compute(trunc, n);
    std::vector<std::vector<Rational>> cols;
    for (GenId v : v_n) {
        const GcaElement correction =
            norm.alpha_prime.image_of(v) - GcaElement::generator(m.set(), v);
        cols.push_back(h.class_coords(correction).coords);
    }
    return QMatrix::from_columns(h.dim(), cols);
}

/// Theta in the strict kernel shape: beta is the identity below degree n on
/// the nose, so the trivial homotopy works.
inline QMatrix theta(const SullivanModel& m, int n, const DgaMorphism& beta) {
    const Algebra a = m.truncated(n);
    if (!beta.src().same_as(a) || !beta.dst().same_as(a))
        throw compute_error("theta: beta is not a self-map of the truncation at " +
                            std::to_string(n));
    const Algebra trunc = m.truncated(n - 1);
    for (GenId g : trunc.gen_ids())
        if (beta.image_of(g) != GcaElement::generator(m.set(), g))
            throw compute_error("theta: beta is not the identity below degree " +
                                std::to_string(n) + " (generator '" +
                                m.gens().name_of(g) + "'); use theta_with_homotopy");
    return theta_with_homotopy(m, n, beta,
                               Homotopy::trivial(DgaMorphism::identity(trunc)));
}

/// Theta': a matrix f into H^n of the truncation determines the kernel
/// element beta(v) = v + (representative of f(v)), identity below. The
/// chain condition holds because representatives are cocycles, and
/// theta(theta_prime(f)) = f exactly by the class_coords normalization.
inline DgaMorphism theta_prime(const SullivanModel& m, int n, const QMatrix& f) {
    const Algebra a = m.truncated(n);
    const Algebra trunc = m.truncated(n - 1);
    const CohomologyBasis h = CohomologyBasis::compute(trunc, n);
    const std::vector<GenId> v_n = m.gens().ids_in_degree(n);
    if (f.rows() != h.dim() || f.cols() != v_n.size())
        throw compute_error("theta_prime: matrix has the wrong shape (want " +
                            std::to_string(h.dim()) + " x " +
                            std::to_string(v_n.size()) + ")");
    std::vector<GcaElement> images(m.gens().count());
    for (GenId g : trunc.gen_ids()) images[g] = GcaElement::generator(m.set(), g);
    for (std::size_t j = 0; j < v_n.size(); ++j)
        images[v_n[j]] = GcaElement::generator(m.set(), v_n[j]) + h.combine(f.column(j));
    return DgaMorphism::make(a, a, std::move(images));
}

/// Structured form of the semidirect decomposition
///   E(Lambda V^{<=n}) = Hom(V^n, H^n(Lambda V^{<=n-1})) : D^n
/// with the degenerate shapes of D^n detected by the rank of b^n.
/// In descriptions, "A : B" denotes a split extension with normal factor A
/// and " x " a direct product.
struct DecomposeReport {
    int n = 0;
    std::size_t dim_v = 0;           // dim V^n
    std::size_t dim_h_trunc = 0;     // dim H^n(Lambda V^{<=n-1})
    std::size_t hom_dim = 0;         // product of the two
    std::size_t dim_h_next_trunc = 0;  // dim H^{n+1}(Lambda V^{<=n-1})
    std::size_t rank_b = 0;
    bool b_zero = false;
    bool b_iso = false;
    bool trunc_trivial = false;
    QMatrix b;
    std::string dn_description;
    std::string e_description;
    std::string dn_sharp_description;
    std::string e_sharp_description;
};

inline DecomposeReport decompose(const SullivanModel& m, int n) {
    DecomposeReport r;
    r.n = n;
    const Algebra trunc = m.truncated(n - 1);
    r.trunc_trivial = trunc.is_trivial();
    r.dim_v = m.gens().ids_in_degree(n).size();
    r.dim_h_trunc = CohomologyBasis::compute(trunc, n).dim();
    r.hom_dim = r.dim_v * r.dim_h_trunc;
    r.b = b_matrix(m, n);
    r.dim_h_next_trunc = r.b.rows();
    r.rank_b = rank(r.b);
    r.b_zero = r.b.is_zero();
    r.b_iso = r.rank_b == r.dim_v && r.rank_b == r.dim_h_next_trunc;

    const std::string p = std::to_string(r.dim_v);
    const std::string gl = "GL(" + p + ",Q)";
    const std::string e_trunc = "E(V<=" + std::to_string(n - 1) + ")";
    const std::string e_sharp_trunc = "E#(V<=" + std::to_string(n - 1) + ")";
    if (r.trunc_trivial)
        r.dn_description = gl;  // Aut(V^n) alone: the truncation is the ground field
    else if (r.b_zero)
        r.dn_description = gl + " x " + e_trunc;
    else if (r.b_iso)
        r.dn_description = e_trunc + " (b^" + std::to_string(n) +
                           " iso: rho = b^-1 H(gamma) b is determined)";
    else
        r.dn_description = "{(rho,[gamma]) in " + gl + " x " + e_trunc +
                           " : H(gamma) b = b rho}";
    if (r.trunc_trivial)
        r.dn_sharp_description = "trivial";
    else if (r.b_zero)
        r.dn_sharp_description = e_sharp_trunc;
    else
        r.dn_sharp_description = "{[gamma] in " + e_sharp_trunc + " : H(gamma) b = b}";

    auto with_hom = [&](const std::string& dn, bool parens) {
        if (r.hom_dim == 0) return dn;
        const std::string hom = "Q^" + std::to_string(r.hom_dim);
        return parens ? hom + " : (" + dn + ")" : hom + " : " + dn;
    };
    const bool needs_parens = !r.trunc_trivial;
    r.e_description = with_hom(r.dn_description, needs_parens);
    r.e_sharp_description = with_hom(r.dn_sharp_description, needs_parens);
    return r;
}

}  // namespace sullivan

#endif
