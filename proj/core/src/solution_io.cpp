#include "qlopt/solution_io.hpp"

#include <json.hpp>

#include "qlopt/errors.hpp"

namespace qlopt {

std::string write_solutions(const LocalOptimaSet& set) {
  std::string out;
  for (const auto& s : set) {
    nlohmann::ordered_json record;
    record["bits"] = to_bit_string(s.bits);
    record["objective"] = s.objective;
    out += record.dump();
    out += '\n';
  }
  return out;
}

LocalOptimaSet parse_solutions(std::string_view text, const QuboInstance* verify_against) {
  LocalOptimaSet set;
  std::optional<std::size_t> width;
  if (verify_against) width = verify_against->size();

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, std::string("malformed solution record: ") + e.what());
    }
    if (!record.is_object() || !record.contains("bits") || !record["bits"].is_string() ||
        !record.contains("objective") || !record["objective"].is_number_integer()) {
      throw ParseError(line_no, "solution record needs string 'bits' and integer 'objective'");
    }
    const auto& bit_text = record["bits"].get_ref<const std::string&>();
    if (width && bit_text.size() != *width) {
      throw ParseError(line_no, "bit string length " + std::to_string(bit_text.size()) + ", expected " +
                                    std::to_string(*width));
    }
    width = bit_text.size();
    Solution s;
    s.bits.reserve(bit_text.size());
    for (const char c : bit_text) {
      if (c != '0' && c != '1') throw ParseError(line_no, "bit string may only contain '0' and '1'");
      s.bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    s.objective = record["objective"].get<Coef>();
    if (verify_against) {
      const Coef actual = objective_value(*verify_against, s.bits);
      if (actual != s.objective) {
        throw VerificationError("line " + std::to_string(line_no) + ": recorded objective " +
                                std::to_string(s.objective) + " but bits evaluate to " + std::to_string(actual));
      }
    }
    if (!set.insert(std::move(s))) throw ParseError(line_no, "duplicate solution " + bit_text);
  }
  return set;
}

}  // namespace qlopt
