#pragma once

#include <stdexcept>

namespace markov {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// dense linear algebra
class ConvergenceFailure : public Error { using Error::Error; };
class OverflowGuard : public Error { using Error::Error; };
class SpectrumOnClosedNegativeAxis : public Error { using Error::Error; };
class IllConditionedBasis : public Error { using Error::Error; };
class NonRealResult : public Error { using Error::Error; };
class NotInvertible : public Error { using Error::Error; };

// validated matrix types
class NotStochastic : public Error { using Error::Error; };
class NotRowZero : public Error { using Error::Error; };
class NotGenerator : public Error { using Error::Error; };

// generator search
class DegenerateSpectrum : public Error { using Error::Error; };
class EnumerationLimit : public Error { using Error::Error; };
class WitnessMismatch : public Error { using Error::Error; };

// input files
class ParseError : public Error { using Error::Error; };

}  // namespace markov
