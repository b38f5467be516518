// Shared fixtures: load corpus models from disk, build common algebras in
// code, and generate random homogeneous elements for law testing.
#pragma once

#include <sullivan/sullivan.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

using namespace sullivan;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing test file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string model_path(const std::string& name) {
    return std::string(SULLIVAN_MODELS_DIR) + "/" + name + ".sul";
}

inline SullivanModel load(const std::string& name) {
    return load_model(read_file(model_path(name)));
}

/// The five closed-form oracle spaces (name, betti numbers up to the
/// formal dimension).
inline std::vector<std::pair<std::string, std::vector<int>>> oracle_spaces() {
    return {
        {"s2", {1, 0, 1}},
        {"s3", {1, 0, 0, 1}},
        {"cp2", {1, 0, 1, 0, 1}},
        {"s3s3", {1, 0, 0, 2, 0, 0, 1}},
        {"s2s4", {1, 0, 1, 0, 1, 0, 1}},
    };
}

/// Free graded-commutative test algebra with a mix of parities,
/// built directly (no parser involved).
inline GenSetPtr mixed_set() {
    return make_generator_set({{"x", 2},
                               {"y", 3},
                               {"u", 4},
                               {"v", 5},
                               {"w", 6},
                               {"t", 7}});
}

/// Random homogeneous element of the given degree with small integer
/// coefficients; may be zero.
inline GcaElement random_element(const GenSetPtr& set, int degree, SampleRng& rng,
                                 int cutoff = kNoCutoff) {
    const GradedPieceBasis basis = graded_piece(*set, degree, cutoff);
    GcaElement e = GcaElement::zero(set);
    for (const Monomial& mono : basis.monomials) {
        const int c = rng.range(-2, 2);
        if (c != 0) e += GcaElement::term(set, mono, Rational(c));
    }
    return e;
}

}  // namespace fixtures
