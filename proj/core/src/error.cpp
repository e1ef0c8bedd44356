#include "tourney/error.hpp"

namespace tourney {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kDigitOutOfRange: return "DigitOutOfRange";
    case Errc::kIndexOutOfRange: return "IndexOutOfRange";
    case Errc::kTableTooLarge: return "TableTooLarge";
    case Errc::kInvalidMove: return "InvalidMove";
    case Errc::kParticipantMismatch: return "ParticipantMismatch";
    case Errc::kNotAParticipant: return "NotAParticipant";
    case Errc::kNotInitialized: return "NotInitialized";
    case Errc::kNoMapping: return "NoMapping";
    case Errc::kInsufficientPlayers: return "InsufficientPlayers";
    case Errc::kUnknownAgentId: return "UnknownAgentId";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kRoundAborted: return "RoundAborted";
    case Errc::kOrderViolation: return "OrderViolation";
    case Errc::kIoFailure: return "IoFailure";
    case Errc::kMalformedData: return "MalformedData";
    case Errc::kConfig: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace tourney
