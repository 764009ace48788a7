#ifndef CSLRANK_ERRORS_HPP
#define CSLRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cslrank {

/// Base of every error raised by the library. Catch this to handle any
/// failure from the pipeline uniformly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CSLRANK_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

// Malformed user input (files, coordinates, scalar text).
CSLRANK_DEFINE_ERROR(InputError);
CSLRANK_DEFINE_ERROR(DimensionError);
CSLRANK_DEFINE_ERROR(MembershipError);
CSLRANK_DEFINE_ERROR(ZeroVectorError);
CSLRANK_DEFINE_ERROR(UnachievableRank);
CSLRANK_DEFINE_ERROR(SingularError);

// Linear-algebra kernel failures.
CSLRANK_DEFINE_ERROR(RankError);
CSLRANK_DEFINE_ERROR(FactorError);

// Evidence that a map is not rank preserving. Each of these is raised with
// a message naming the lattice element, edge or unit that broke.
class RefutationError : public Error {
 public:
  using Error::Error;
};

#define CSLRANK_DEFINE_REFUTATION(Name)     \
  class Name : public RefutationError {     \
   public:                                  \
    using RefutationError::RefutationError; \
  }

CSLRANK_DEFINE_REFUTATION(NotRankPreserving);
CSLRANK_DEFINE_REFUTATION(ConflictError);
CSLRANK_DEFINE_REFUTATION(ViolationError);
CSLRANK_DEFINE_REFUTATION(AlphaError);
CSLRANK_DEFINE_REFUTATION(CoherenceError);
CSLRANK_DEFINE_REFUTATION(OrthogonalityError);
CSLRANK_DEFINE_REFUTATION(CoverageError);

#undef CSLRANK_DEFINE_REFUTATION
#undef CSLRANK_DEFINE_ERROR

}  // namespace cslrank

#endif  // CSLRANK_ERRORS_HPP
