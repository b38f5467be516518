#ifndef SULLIVAN_GCA_HPP
#define SULLIVAN_GCA_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/rational.hpp"

namespace sullivan {

using GenId = std::uint32_t;

/// Cutoff value meaning "no truncation".
inline constexpr int kNoCutoff = std::numeric_limits<int>::max();

struct Generator {
    std::string name;
    int degree = 0;
};

/// Immutable, canonically ordered set of algebra generators. Generators are
/// sorted by (degree, name) and addressed by their rank in that order, so two
/// sets with the same names and degrees assign identical ids. Degree 1 is
/// admitted because cylinder objects need it; Sullivan-model validation
/// separately insists on degree >= 2.
class GeneratorSet {
public:
    explicit GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
        std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
            return a.degree != b.degree ? a.degree < b.degree : a.name < b.name;
        });
        for (GenId i = 0; i < gens_.size(); ++i) {
            if (gens_[i].degree < 1)
                throw compute_error("generator '" + gens_[i].name + "' has degree < 1");
            if (!index_.emplace(gens_[i].name, i).second)
                throw compute_error("duplicate generator name '" + gens_[i].name + "'");
        }
    }

    std::size_t count() const { return gens_.size(); }

    const Generator& operator[](GenId id) const { return gens_.at(id); }

    int degree_of(GenId id) const { return gens_.at(id).degree; }
    const std::string& name_of(GenId id) const { return gens_.at(id).name; }

    std::optional<GenId> find(std::string_view name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Ids of the generators of one degree, ascending.
    std::vector<GenId> ids_in_degree(int degree) const {
        std::vector<GenId> out;
        for (GenId i = 0; i < gens_.size(); ++i)
            if (gens_[i].degree == degree) out.push_back(i);
        return out;
    }

    /// Ids of the generators of degree <= cutoff, ascending.
    std::vector<GenId> ids_up_to(int cutoff) const {
        std::vector<GenId> out;
        for (GenId i = 0; i < gens_.size(); ++i)
            if (gens_[i].degree <= cutoff) out.push_back(i);
        return out;
    }

    int max_degree() const { return gens_.empty() ? 0 : gens_.back().degree; }

    bool operator==(const GeneratorSet& o) const {
        if (gens_.size() != o.gens_.size()) return false;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree)
                return false;
        return true;
    }

private:
    std::vector<Generator> gens_;
    std::map<std::string, GenId, std::less<>> index_;
};

using GenSetPtr = std::shared_ptr<const GeneratorSet>;

inline GenSetPtr make_generator_set(std::vector<Generator> gens) {
    return std::make_shared<const GeneratorSet>(std::move(gens));
}

/// Normal-form monomial: factors sorted by generator id (hence by degree,
/// then name), exponents >= 1, odd generators never repeated. The empty
/// factor list is the unit. Monomials compare lexicographically on their
/// factor lists, which fixes the basis order everywhere downstream.
class Monomial {
public:
    Monomial() = default;

    static Monomial of(GenId g, int exp = 1) {
        Monomial m;
        if (exp < 0) throw compute_error("monomial exponent must be >= 0");
        if (exp > 0) m.f_.emplace_back(g, exp);
        return m;
    }

    /// Factors must already be sorted, positive, with distinct ids; used by
    /// the normalization routine after it has done the sorting itself.
    static Monomial from_sorted(std::vector<std::pair<GenId, int>> factors) {
        Monomial m;
        m.f_ = std::move(factors);
        return m;
    }

    const std::vector<std::pair<GenId, int>>& factors() const { return f_; }
    bool is_unit() const { return f_.empty(); }

    int degree(const GeneratorSet& s) const {
        int d = 0;
        for (const auto& [g, e] : f_) d += s.degree_of(g) * e;
        return d;
    }

    /// Total number of generator occurrences, counted with multiplicity.
    int word_length() const {
        int n = 0;
        for (const auto& [g, e] : f_) n += e;
        return n;
    }

    /// Largest generator degree occurring (0 for the unit).
    int top_generator_degree(const GeneratorSet& s) const {
        return f_.empty() ? 0 : s.degree_of(f_.back().first);
    }

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<std::pair<GenId, int>> f_;
};

namespace detail {

/// Sort a list of factor blocks into normal form, tracking the Koszul sign:
/// swapping adjacent blocks of total degrees p and q costs (-1)^{pq}.
/// Returns nullopt when the product vanishes (an odd generator squared).
inline std::optional<std::pair<Monomial, int>> normalize_blocks(
    const GeneratorSet& s, std::vector<std::pair<GenId, int>> blocks) {
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const auto& b) { return b.second == 0; }),
                 blocks.end());
    int sign = 1;
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && blocks[j - 1].first > blocks[j].first) {
            const int da = s.degree_of(blocks[j - 1].first) * blocks[j - 1].second;
            const int db = s.degree_of(blocks[j].first) * blocks[j].second;
            if ((da & 1) && (db & 1)) sign = -sign;
            std::swap(blocks[j - 1], blocks[j]);
            --j;
        }
    }
    std::vector<std::pair<GenId, int>> merged;
    for (const auto& b : blocks) {
        if (!merged.empty() && merged.back().first == b.first)
            merged.back().second += b.second;
        else
            merged.push_back(b);
    }
    for (const auto& [g, e] : merged)
        if ((s.degree_of(g) & 1) && e > 1) return std::nullopt;
    return std::make_pair(Monomial::from_sorted(std::move(merged)), sign);
}

}  // namespace detail

/// Element of the free graded-commutative algebra on a generator set:
/// a finite rational combination of normal-form monomials, stored sparsely
/// with no zero coefficients. A default-constructed element is the zero of
/// every algebra (its set pointer is null), so sums over empty ranges work
/// without threading a set through.
class GcaElement {
public:
    GcaElement() = default;

    static GcaElement zero(GenSetPtr s) {
        GcaElement e;
        e.set_ = std::move(s);
        return e;
    }

    static GcaElement unit(GenSetPtr s, const Rational& c = Rational(1)) {
        return term(std::move(s), Monomial(), c);
    }

    static GcaElement generator(GenSetPtr s, GenId g) {
        return term(std::move(s), Monomial::of(g), Rational(1));
    }

    static GcaElement term(GenSetPtr s, const Monomial& m, const Rational& c) {
        GcaElement e;
        e.set_ = std::move(s);
        if (c != 0) e.terms_.emplace(m, c);
        return e;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    const GenSetPtr& set() const { return set_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Common degree of all monomials, or nullopt when the element is zero
    /// or inhomogeneous. (Zero is homogeneous of every degree; callers that
    /// care should test is_zero first or use is_homogeneous_of.)
    std::optional<int> homogeneous_degree() const {
        if (is_zero() || !set_) return std::nullopt;
        std::optional<int> d;
        for (const auto& [m, c] : terms_) {
            const int dm = m.degree(*set_);
            if (d && *d != dm) return std::nullopt;
            d = dm;
        }
        return d;
    }

    bool is_homogeneous_of(int degree) const {
        if (is_zero()) return true;
        auto d = homogeneous_degree();
        return d && *d == degree;
    }

    /// True when every generator occurring has degree <= cutoff.
    bool lies_in(int cutoff) const {
        if (cutoff == kNoCutoff || is_zero()) return true;
        for (const auto& [m, c] : terms_)
            if (m.top_generator_degree(*set_) > cutoff) return false;
        return true;
    }

    /// The part whose monomials have the given word length (1 = linear part,
    /// >= 2 = decomposable part, taken one length at a time).
    GcaElement word_component(int length) const {
        GcaElement out;
        out.set_ = set_;
        for (const auto& [m, c] : terms_)
            if (m.word_length() == length) out.terms_.emplace(m, c);
        return out;
    }

    int max_word_length() const {
        int n = 0;
        for (const auto& [m, c] : terms_) n = std::max(n, m.word_length());
        return n;
    }

    GcaElement& operator+=(const GcaElement& o) {
        adopt_set(o);
        for (const auto& [m, c] : o.terms_) {
            auto [it, fresh] = terms_.try_emplace(m, c);
            if (!fresh) {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }
    GcaElement& operator-=(const GcaElement& o) { return *this += -o; }

    friend GcaElement operator+(GcaElement a, const GcaElement& b) { return a += b; }
    friend GcaElement operator-(GcaElement a, const GcaElement& b) { return a -= b; }

    GcaElement operator-() const {
        GcaElement out;
        out.set_ = set_;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }

    friend GcaElement operator*(const Rational& c, const GcaElement& e) {
        GcaElement out;
        out.set_ = e.set_;
        if (c != 0)
            for (const auto& [m, k] : e.terms_) out.terms_.emplace(m, c * k);
        return out;
    }
    friend GcaElement operator*(const GcaElement& e, const Rational& c) { return c * e; }

    /// Graded-commutative product with Koszul signs; products with a square
    /// of an odd generator vanish.
    friend GcaElement operator*(const GcaElement& a, const GcaElement& b) {
        GcaElement out;
        out.set_ = a.set_;
        out.adopt_set(b);
        if (a.is_zero() || b.is_zero()) return out;
        const GeneratorSet& s = *out.set_;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                std::vector<std::pair<GenId, int>> blocks = ma.factors();
                blocks.insert(blocks.end(), mb.factors().begin(), mb.factors().end());
                auto norm = detail::normalize_blocks(s, std::move(blocks));
                if (!norm) continue;
                out += term(out.set_, norm->first, ca * cb * norm->second);
            }
        }
        return out;
    }

    bool operator==(const GcaElement& o) const {
        if (is_zero() && o.is_zero()) return true;
        return terms_ == o.terms_;
    }
    bool operator!=(const GcaElement& o) const { return !(*this == o); }

private:
    /// Take o's set when we have none; reject genuinely different sets.
    void adopt_set(const GcaElement& o) {
        if (!o.set_) return;
        if (!set_) {
            set_ = o.set_;
            return;
        }
        if (set_ != o.set_ && !(*set_ == *o.set_))
            throw compute_error("elements over different generator sets cannot be combined");
    }

    GenSetPtr set_;
    std::map<Monomial, Rational> terms_;
};

/// Normalize a raw product of named generator occurrences (each with an
/// exponent) into an element: sorts with Koszul signs, merges repeats, and
/// collapses odd squares to zero. Unknown names are an error.
inline GcaElement normalize_product(const GenSetPtr& s,
                                    const std::vector<std::pair<std::string, int>>& occurrences,
                                    const Rational& coeff = Rational(1)) {
    std::vector<std::pair<GenId, int>> blocks;
    blocks.reserve(occurrences.size());
    for (const auto& [name, exp] : occurrences) {
        auto id = s->find(name);
        if (!id) throw compute_error("unknown generator '" + name + "'");
        if (exp < 0) throw compute_error("negative exponent on '" + name + "'");
        blocks.emplace_back(*id, exp);
    }
    auto norm = detail::normalize_blocks(*s, std::move(blocks));
    if (!norm) return GcaElement::zero(s);
    return GcaElement::term(s, norm->first, coeff * norm->second);
}

/// Ordered monomial basis of one graded piece Lambda(V^{<=cutoff})^degree.
struct GradedPieceBasis {
    int degree = 0;
    std::vector<Monomial> monomials;  // sorted by Monomial's canonical order

    std::size_t dim() const { return monomials.size(); }

    std::optional<std::size_t> index_of(const Monomial& m) const {
        auto it = std::lower_bound(monomials.begin(), monomials.end(), m);
        if (it == monomials.end() || !(*it == m)) return std::nullopt;
        return static_cast<std::size_t>(it - monomials.begin());
    }
};

/// Enumerate the monomial basis of the given degree, using only generators
/// of degree <= cutoff. Degree 0 is the unit; negative degrees are empty.
inline GradedPieceBasis graded_piece(const GeneratorSet& s, int degree,
                                     int cutoff = kNoCutoff) {
    GradedPieceBasis basis;
    basis.degree = degree;
    if (degree < 0) return basis;
    if (degree == 0) {
        basis.monomials.push_back(Monomial());
        return basis;
    }
    const std::vector<GenId> gens = s.ids_up_to(cutoff);
    std::vector<std::pair<GenId, int>> acc;
    // Depth-first over exponent choices, generators in canonical id order,
    // so the factor lists come out sorted.
    auto recurse = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (remaining == 0) {
            basis.monomials.push_back(Monomial::from_sorted(acc));
            return;
        }
        if (i == gens.size()) return;
        const GenId g = gens[i];
        const int d = s.degree_of(g);
        const int emax = (d & 1) ? std::min(1, remaining / d) : remaining / d;
        self(self, i + 1, remaining);  // exponent 0 first
        for (int e = 1; e <= emax; ++e) {
            acc.emplace_back(g, e);
            self(self, i + 1, remaining - e * d);
            acc.pop_back();
        }
    };
    recurse(recurse, 0, degree);
    std::sort(basis.monomials.begin(), basis.monomials.end());
    return basis;
}

/// Coordinates of a homogeneous element in a graded-piece basis.
/// The element must be zero or homogeneous of the basis degree, and all of
/// its monomials must be listed (they are, whenever the element lies in the
/// corresponding truncation).
inline std::vector<Rational> coords(const GcaElement& e, const GradedPieceBasis& basis) {
    std::vector<Rational> v(basis.dim());
    if (e.is_zero()) return v;
    if (!e.is_homogeneous_of(basis.degree))
        throw compute_error("coords: element is not homogeneous of degree " +
                            std::to_string(basis.degree));
    for (const auto& [m, c] : e.terms()) {
        auto idx = basis.index_of(m);
        if (!idx)
            throw compute_error("coords: monomial outside the graded piece "
                                "(element does not lie in this truncation)");
        v[*idx] = c;
    }
    return v;
}

inline GcaElement element_of(const GenSetPtr& s, const GradedPieceBasis& basis,
                             const std::vector<Rational>& v) {
    if (v.size() != basis.dim())
        throw compute_error("element_of: coordinate length mismatch");
    GcaElement e = GcaElement::zero(s);
    for (std::size_t i = 0; i < v.size(); ++i)
        e += GcaElement::term(s, basis.monomials[i], v[i]);
    return e;
}

/// Extend a degree-shifting linear map on generators to an odd derivation:
/// on a monomial g1^{e1}...gk^{ek} the map acts one factor block at a time,
/// with the Koszul sign of the degrees passed over. On an even block g^e the
/// block derivative is e*g^{e-1}*img(g); on an odd block (e = 1) it is
/// img(g). `images` is indexed by generator id and must live in the same
/// algebra as `e` (each entry may be the universal zero).
inline GcaElement apply_odd_derivation(const GcaElement& e,
                                       const std::vector<GcaElement>& images) {
    GcaElement out = GcaElement::zero(e.set());
    if (e.is_zero()) return out;
    const GenSetPtr& s = e.set();
    for (const auto& [m, c] : e.terms()) {
        int prefix_degree = 0;
        for (std::size_t i = 0; i < m.factors().size(); ++i) {
            const auto [g, exp] = m.factors()[i];
            if (g >= images.size())
                throw compute_error("derivation image missing for a generator");
            const GcaElement& img = images[g];
            if (!img.is_zero()) {
                // prefix * d(block) * suffix, signed by the prefix degree.
                GcaElement piece = GcaElement::unit(
                    s, (prefix_degree & 1) ? -c : c);
                std::vector<std::pair<GenId, int>> pre(m.factors().begin(),
                                                       m.factors().begin() + i);
                std::vector<std::pair<GenId, int>> post(m.factors().begin() + i + 1,
                                                        m.factors().end());
                piece = piece * GcaElement::term(s, Monomial::from_sorted(pre), 1);
                if (s->degree_of(g) & 1) {
                    piece = piece * img;  // exp == 1 for odd generators
                } else {
                    piece = piece * GcaElement::term(s, Monomial::of(g, exp - 1),
                                                     Rational(exp));
                    piece = piece * img;
                }
                piece = piece * GcaElement::term(s, Monomial::from_sorted(post), 1);
                out += piece;
            }
            prefix_degree += s->degree_of(g) * exp;
        }
    }
    return out;
}

/// Extend a degree-preserving assignment of generator images to an algebra
/// map by substitution: each monomial goes to the product of its factor
/// images. `images` is indexed by source generator id; entries may live in a
/// different algebra, whose set is `target`.
inline GcaElement apply_algebra_map(const GcaElement& e,
                                    const std::vector<GcaElement>& images,
                                    const GenSetPtr& target) {
    GcaElement out = GcaElement::zero(target);
    for (const auto& [m, c] : e.terms()) {
        GcaElement prod = GcaElement::unit(target, c);
        for (const auto& [g, exp] : m.factors()) {
            if (g >= images.size())
                throw compute_error("map image missing for a generator");
            for (int k = 0; k < exp && !prod.is_zero(); ++k) prod = prod * images[g];
        }
        out += prod;
    }
    return out;
}

}  // namespace sullivan

#endif
