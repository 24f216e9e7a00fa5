#ifndef SUBMON_VERDICT_HPP_
#define SUBMON_VERDICT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace submon {

  enum class Outcome { member, non_member, unknown };

  std::string to_string(Outcome o);

  // Result of a membership decision. For a member the witness lists
  // indices into `generators` whose product equals the query; for a
  // non-member `certificate` names the criterion; an unknown carries the
  // budget and, where one exists, a serialized instance.
  struct Verdict {
    Outcome                    outcome = Outcome::unknown;
    std::vector<std::string>   generators;
    std::vector<std::size_t>   witness;
    std::string                certificate;
    std::vector<std::string>   method;
    std::string                instance;
    std::optional<std::size_t> bound;
    bool                       complete = false;

    bool member() const noexcept {
      return outcome == Outcome::member;
    }
    bool non_member() const noexcept {
      return outcome == Outcome::non_member;
    }
    bool unknown() const noexcept {
      return outcome == Outcome::unknown;
    }

    Verdict& trace(std::string step) {
      method.push_back(std::move(step));
      return *this;
    }

    std::string witness_text() const;
  };

  // Method-trace tags for the two completeness tiers.
  std::string certified(std::string const& what);
  std::string semi_decision(std::string const& what, std::size_t budget);

}  // namespace submon

#endif  // SUBMON_VERDICT_HPP_
