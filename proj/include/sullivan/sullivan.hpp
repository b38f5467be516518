#ifndef SULLIVAN_SULLIVAN_HPP
#define SULLIVAN_SULLIVAN_HPP

/// Umbrella header: exact-arithmetic toolkit for minimal Sullivan algebras --
/// graded-commutative algebra over Q, cohomology, DGA morphisms and
/// homotopies, the Whitehead exact sequence with the semidirect splitting of
/// the self-equivalence group, and elliptic-model embedding reports.

#include "sullivan/elliptic.hpp"
#include "sullivan/errors.hpp"
#include "sullivan/gca.hpp"
#include "sullivan/homotopy.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/model.hpp"
#include "sullivan/morphism.hpp"
#include "sullivan/parse.hpp"
#include "sullivan/print.hpp"
#include "sullivan/rational.hpp"
#include "sullivan/sampling.hpp"
#include "sullivan/whitehead.hpp"

#endif
