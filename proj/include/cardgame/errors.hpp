#pragma once

#include <stdexcept>
#include <string>

namespace cardgame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public Error { using Error::Error; };
class InvalidLabel : public Error { using Error::Error; };
class DeckExhausted : public Error { using Error::Error; };
class IncompleteTranscript : public Error { using Error::Error; };
class IndexOutOfRange : public Error { using Error::Error; };
class WrongFeedbackMode : public Error { using Error::Error; };
class InfeasibleHistory : public Error { using Error::Error; };
class RandomizedStrategyUnsupported : public Error { using Error::Error; };
class NumericalRange : public Error { using Error::Error; };

// Raised whenever a brute-force computation is asked for a deck larger than
// its enumeration cap. The CLI maps this to exit code 3.
class OracleLimitExceeded : public Error {
 public:
  OracleLimitExceeded(int mn, int limit)
      : Error("deck of " + std::to_string(mn) + " cards exceeds the enumeration limit of " +
              std::to_string(limit)),
        mn_(mn),
        limit_(limit) {}

  int mn() const noexcept { return mn_; }
  int limit() const noexcept { return limit_; }

 private:
  int mn_;
  int limit_;
};

}  // namespace cardgame
