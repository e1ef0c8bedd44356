#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tourney {

enum class Errc {
  kDigitOutOfRange,
  kIndexOutOfRange,
  kTableTooLarge,
  kInvalidMove,
  kParticipantMismatch,
  kNotAParticipant,
  kNotInitialized,
  kNoMapping,
  kInsufficientPlayers,
  kUnknownAgentId,
  kInvalidArgument,
  kRoundAborted,
  kOrderViolation,
  kIoFailure,
  kMalformedData,
  kConfig,
};

std::string_view to_string(Errc code);

// Every failure raised by the library carries one of the codes above so
// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tourney
