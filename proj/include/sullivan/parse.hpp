#ifndef SULLIVAN_PARSE_HPP
#define SULLIVAN_PARSE_HPP

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/gca.hpp"
#include "sullivan/model.hpp"
#include "sullivan/morphism.hpp"
#include "sullivan/print.hpp"
#include "sullivan/rational.hpp"

namespace sullivan {

struct SourceLoc {
    int line = 0;  // 1-based
    int col = 0;   // 1-based
};

/// Syntax or reference error in a model/map file; the location is carried
/// both structurally and in the message ("line L, column C: ...").
struct parse_error : error {
    SourceLoc loc;
    parse_error(const std::string& msg, SourceLoc l)
        : error("line " + std::to_string(l.line) + ", column " +
                std::to_string(l.col) + ": " + msg),
          loc(l) {}
};

namespace detail {

struct Token {
    enum Kind { kName, kInt, kPlus, kMinus, kStar, kCaret, kSlash, kEquals, kEnd };
    Kind kind = kEnd;
    std::string text;
    int col = 0;
};

/// Tokenize one line; '#' starts a comment running to the end of the line.
inline std::vector<Token> tokenize_line(std::string_view line, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') break;
        const int col = static_cast<int>(i) + 1;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
                ++j;
            out.push_back({Token::kName, std::string(line.substr(i, j - i)), col});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])))
                ++j;
            out.push_back({Token::kInt, std::string(line.substr(i, j - i)), col});
            i = j;
            continue;
        }
        Token::Kind kind;
        switch (c) {
            case '+': kind = Token::kPlus; break;
            case '-': kind = Token::kMinus; break;
            case '*': kind = Token::kStar; break;
            case '^': kind = Token::kCaret; break;
            case '/': kind = Token::kSlash; break;
            case '=': kind = Token::kEquals; break;
            default:
                throw parse_error("unexpected character '" + std::string(1, c) + "'",
                                  {line_no, col});
        }
        out.push_back({kind, std::string(1, c), col});
        ++i;
    }
    out.push_back({Token::kEnd, "", static_cast<int>(line.size()) + 1});
    return out;
}

class TokenStream {
public:
    TokenStream(std::vector<Token> tokens, int line_no)
        : tokens_(std::move(tokens)), line_(line_no) {}

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
    SourceLoc loc() const { return {line_, peek().col}; }
    int line() const { return line_; }

    const Token& expect(Token::Kind kind, const std::string& what) {
        if (peek().kind != kind)
            throw parse_error("expected " + what +
                                  (peek().kind == Token::kEnd
                                       ? " but the line ends"
                                       : " but found '" + peek().text + "'"),
                              loc());
        return next();
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int line_ = 0;
};

inline int parse_small_int(const Token& t, int line_no, const char* what) {
    if (t.text.size() > 6)
        throw parse_error(std::string(what) + " " + t.text + " is out of range",
                          {line_no, t.col});
    return std::stoi(t.text);
}

/// Context shared by expression parsing: the (complete) generator set plus,
/// for model files, the declaration lines used to enforce
/// "declare before use". Map files leave decl_lines empty.
struct ExprContext {
    GenSetPtr set;
    const std::map<std::string, int>* decl_lines = nullptr;  // name -> line
};

inline GenId resolve_name(const ExprContext& ctx, const Token& tok, int line_no) {
    auto id = ctx.set->find(tok.text);
    if (!id) {
        if (ctx.decl_lines && ctx.decl_lines->count(tok.text))
            throw parse_error("generator '" + tok.text + "' is declared later (line " +
                                  std::to_string(ctx.decl_lines->at(tok.text)) +
                                  "); declarations must precede use",
                              {line_no, tok.col});
        throw parse_error("undeclared generator '" + tok.text + "'",
                          {line_no, tok.col});
    }
    if (ctx.decl_lines) {
        auto it = ctx.decl_lines->find(tok.text);
        if (it != ctx.decl_lines->end() && it->second >= line_no)
            throw parse_error("generator '" + tok.text + "' is declared later (line " +
                                  std::to_string(it->second) +
                                  "); declarations must precede use",
                              {line_no, tok.col});
    }
    return *id;
}

/// term := [coeff "*"] factor ("*" factor)*, factor := NAME ["^" INT].
inline GcaElement parse_term(TokenStream& ts, const ExprContext& ctx, int sign) {
    Rational coeff(sign);
    if (ts.peek().kind == Token::kInt) {
        const Token num = ts.next();
        Int numerator(num.text);
        if (ts.peek().kind == Token::kSlash) {
            ts.next();
            const Token den = ts.expect(Token::kInt, "a denominator");
            Int denominator(den.text);
            if (denominator == 0)
                throw parse_error("zero denominator", {ts.line(), den.col});
            coeff *= Rational(numerator, denominator);
        } else {
            coeff *= Rational(numerator);
        }
        ts.expect(Token::kStar, "'*' between coefficient and generators");
    }
    std::vector<std::pair<std::string, int>> occurrences;
    while (true) {
        const Token name = ts.expect(Token::kName, "a generator name");
        const GenId id = resolve_name(ctx, name, ts.line());
        int exp = 1;
        if (ts.peek().kind == Token::kCaret) {
            ts.next();
            const Token e = ts.expect(Token::kInt, "an exponent");
            exp = parse_small_int(e, ts.line(), "exponent");
            if (exp < 1)
                throw parse_error("exponent must be >= 1", {ts.line(), e.col});
            if ((ctx.set->degree_of(id) & 1) && exp > 1)
                throw parse_error("odd-degree generator '" + name.text +
                                      "' cannot carry exponent " + std::to_string(exp) +
                                      " (its square is zero)",
                                  {ts.line(), e.col});
        }
        occurrences.emplace_back(name.text, exp);
        if (ts.peek().kind != Token::kStar) break;
        ts.next();
    }
    return normalize_product(ctx.set, occurrences, coeff);
}

/// expr := ["+"|"-"] term (("+"|"-") term)*. The optional leading sign is a
/// benign extension of the grammar needed so printed elements with a
/// negative leading coefficient parse back.
inline GcaElement parse_expr(TokenStream& ts, const ExprContext& ctx) {
    GcaElement acc = GcaElement::zero(ctx.set);
    int sign = 1;
    if (ts.peek().kind == Token::kPlus || ts.peek().kind == Token::kMinus) {
        sign = ts.peek().kind == Token::kMinus ? -1 : 1;
        ts.next();
    }
    while (true) {
        acc += parse_term(ts, ctx, sign);
        if (ts.peek().kind == Token::kPlus) {
            sign = 1;
            ts.next();
            continue;
        }
        if (ts.peek().kind == Token::kMinus) {
            sign = -1;
            ts.next();
            continue;
        }
        break;
    }
    ts.expect(Token::kEnd, "end of line");
    return acc;
}

inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            lines.emplace_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return lines;
}

}  // namespace detail

/// Parsed model file: the generator set plus differential assignments and
/// the source locations needed for later validation messages.
struct ModelFile {
    GenSetPtr set;
    std::vector<GcaElement> differentials;            // by generator id
    std::vector<std::optional<SourceLoc>> diff_locs;  // by generator id
    std::map<std::string, SourceLoc> gen_locs;

    Dga to_dga() const { return Dga(set, differentials); }
};

/// Parse a model file:
///   line      := gen-decl | diff-decl | comment | blank
///   gen-decl  := "generator" NAME INT        (INT >= 2)
///   diff-decl := "d" NAME "=" expr
/// Generators must be declared before use; one differential assignment per
/// generator; "#" comments run to the end of the line.
inline ModelFile parse_model(std::string_view text) {
    const std::vector<std::string> lines = detail::split_lines(text);

    // First pass: collect generator declarations so the complete set exists
    // before any expression is built (ids are ranks in the sorted set).
    std::vector<Generator> gens;
    std::map<std::string, int> decl_lines;
    std::map<std::string, SourceLoc> gen_locs;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const int line_no = static_cast<int>(li) + 1;
        detail::TokenStream ts(detail::tokenize_line(lines[li], line_no), line_no);
        if (ts.peek().kind != detail::Token::kName || ts.peek().text != "generator")
            continue;
        ts.next();
        const detail::Token name = ts.expect(detail::Token::kName, "a generator name");
        const detail::Token deg = ts.expect(detail::Token::kInt, "a degree");
        ts.expect(detail::Token::kEnd, "end of line");
        const int degree = detail::parse_small_int(deg, line_no, "degree");
        if (degree < 2)
            throw parse_error("generator degree must be >= 2 (simply connected "
                              "models), got " + std::to_string(degree),
                              {line_no, deg.col});
        if (decl_lines.count(name.text))
            throw parse_error("duplicate generator '" + name.text +
                                  "' (first declared on line " +
                                  std::to_string(decl_lines.at(name.text)) + ")",
                              {line_no, name.col});
        decl_lines.emplace(name.text, line_no);
        gen_locs.emplace(name.text, SourceLoc{line_no, name.col});
        gens.push_back({name.text, degree});
    }

    ModelFile out;
    out.set = make_generator_set(std::move(gens));
    out.differentials.assign(out.set->count(), GcaElement());
    out.diff_locs.assign(out.set->count(), std::nullopt);
    out.gen_locs = std::move(gen_locs);

    const detail::ExprContext ctx{out.set, &decl_lines};
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const int line_no = static_cast<int>(li) + 1;
        detail::TokenStream ts(detail::tokenize_line(lines[li], line_no), line_no);
        if (ts.peek().kind == detail::Token::kEnd) continue;  // blank / comment
        if (ts.peek().kind != detail::Token::kName)
            throw parse_error("expected 'generator' or 'd' at the start of the line",
                              ts.loc());
        if (ts.peek().text == "generator") continue;  // handled in the first pass
        if (ts.peek().text != "d")
            throw parse_error("expected 'generator' or 'd', found '" + ts.peek().text +
                                  "'",
                              ts.loc());
        ts.next();
        const detail::Token name = ts.expect(detail::Token::kName, "a generator name");
        const GenId id = detail::resolve_name(ctx, name, line_no);
        if (out.diff_locs[id])
            throw parse_error("differential of '" + name.text +
                                  "' already assigned on line " +
                                  std::to_string(out.diff_locs[id]->line),
                              {line_no, name.col});
        ts.expect(detail::Token::kEquals, "'='");
        out.differentials[id] = detail::parse_expr(ts, ctx);
        out.diff_locs[id] = SourceLoc{line_no, name.col};
    }
    return out;
}

/// Parse, build, and validate in one step; throws parse_error or
/// model_error.
inline SullivanModel load_model(std::string_view text) {
    const ModelFile file = parse_model(text);
    Dga dga = file.to_dga();
    const ValidationReport report = validate_sullivan(dga);
    if (!report.valid()) throw model_error(report.to_string());
    return SullivanModel::checked(std::move(dga));
}

/// Parsed map file: lines "f NAME = expr" over an existing generator set;
/// omitted generators mean the identity on that generator.
struct MapFile {
    std::map<GenId, GcaElement> images;
    std::map<GenId, SourceLoc> locs;
};

inline MapFile parse_map(std::string_view text, const GenSetPtr& set) {
    const std::vector<std::string> lines = detail::split_lines(text);
    const detail::ExprContext ctx{set, nullptr};
    MapFile out;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const int line_no = static_cast<int>(li) + 1;
        detail::TokenStream ts(detail::tokenize_line(lines[li], line_no), line_no);
        if (ts.peek().kind == detail::Token::kEnd) continue;
        if (ts.peek().kind != detail::Token::kName || ts.peek().text != "f")
            throw parse_error("expected 'f NAME = expr'", ts.loc());
        ts.next();
        const detail::Token name = ts.expect(detail::Token::kName, "a generator name");
        auto id = set->find(name.text);
        if (!id)
            throw parse_error("unknown generator '" + name.text + "'",
                              {line_no, name.col});
        if (out.images.count(*id))
            throw parse_error("image of '" + name.text + "' already assigned on line " +
                                  std::to_string(out.locs.at(*id).line),
                              {line_no, name.col});
        ts.expect(detail::Token::kEquals, "'='");
        out.images.emplace(*id, detail::parse_expr(ts, ctx));
        out.locs.emplace(*id, SourceLoc{line_no, name.col});
    }
    return out;
}

/// Interpret a map file as a self-map of the view: omitted generators act as
/// the identity. Degree and chain conditions are checked by the morphism
/// constructor.
inline DgaMorphism to_self_morphism(const MapFile& file, const Algebra& a) {
    std::vector<GcaElement> images(a.gens().count());
    for (GenId g : a.gen_ids()) {
        auto it = file.images.find(g);
        images[g] = it == file.images.end() ? GcaElement::generator(a.set(), g)
                                            : it->second;
    }
    return DgaMorphism::make(a, a, std::move(images));
}

/// Canonical text form of a model, re-parseable into an equal model:
/// generator lines in canonical (degree, name) order, then the nonzero
/// differentials. Canonical order automatically declares before use because
/// differentials only involve generators of strictly lower degree.
inline std::string to_sul(const Dga& dga) {
    std::string out;
    for (GenId g = 0; g < dga.gens().count(); ++g)
        out += "generator " + dga.gens().name_of(g) + " " +
               std::to_string(dga.gens().degree_of(g)) + "\n";
    for (GenId g = 0; g < dga.gens().count(); ++g)
        if (!dga.d_of(g).is_zero())
            out += "d " + dga.gens().name_of(g) + " = " + to_string(dga.d_of(g)) + "\n";
    return out;
}

}  // namespace sullivan

#endif
