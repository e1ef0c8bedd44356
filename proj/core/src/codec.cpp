#include "tourney/codec.hpp"

#include <string>

#include "tourney/error.hpp"

namespace tourney::codec {

std::uint64_t table_length(std::uint32_t q, std::uint32_t m) {
  if (q < 2 || m < 1) {
    throw Error(Errc::kInvalidArgument,
                "table length needs q >= 2 and m >= 1, got q=" +
                    std::to_string(q) + " m=" + std::to_string(m));
  }
  std::uint64_t length = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (length > kMaxTableLength / q) {
      throw Error(Errc::kTableTooLarge, std::to_string(q) + "^" +
                                            std::to_string(m) +
                                            " exceeds the table size limit");
    }
    length *= q;
  }
  return length;
}

std::uint64_t encode_history(std::span<const Choice> digits, std::uint32_t q) {
  if (digits.empty()) {
    throw Error(Errc::kInvalidArgument, "history window must be non-empty");
  }
  // Validates q and overflow up front; after that Horner's rule cannot wrap.
  table_length(q, static_cast<std::uint32_t>(digits.size()));
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= q) {
      throw Error(Errc::kDigitOutOfRange,
                  "digit " + std::to_string(digits[i]) + " at position " +
                      std::to_string(i) + " is not below base " +
                      std::to_string(q));
    }
    index = index * q + digits[i];
  }
  return index;
}

HistoryWindow decode_index(std::uint64_t index, std::uint32_t q,
                           std::uint32_t m) {
  const std::uint64_t length = table_length(q, m);
  if (index >= length) {
    throw Error(Errc::kIndexOutOfRange,
                "index " + std::to_string(index) + " is not below " +
                    std::to_string(length));
  }
  HistoryWindow window{std::vector<Choice>(m, 0), q};
  for (std::uint32_t i = m; i-- > 0;) {
    window.digits[i] = static_cast<Choice>(index % q);
    index /= q;
  }
  return window;
}

}  // namespace tourney::codec
