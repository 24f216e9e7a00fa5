#ifndef SUBMON_REWRITE_HPP_
#define SUBMON_REWRITE_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "submon/verdict.hpp"
#include "submon/words.hpp"

namespace submon {

  // String rewriting over single-character symbols. Signed letters are
  // opaque here: 'a' and 'A' are just two symbols, and cancellation only
  // happens through explicit rules such as aA -> 1.
  class RewritingSystem {
   public:
    using Rule = std::pair<std::string, std::string>;

    RewritingSystem() = default;
    RewritingSystem(std::string alphabet, std::vector<Rule> rules);

    std::string const& alphabet() const noexcept {
      return _alphabet;
    }
    std::vector<Rule> const& rules() const noexcept {
      return _rules;
    }

    bool complete() const noexcept {
      return _complete;
    }
    std::string const& provenance() const noexcept {
      return _provenance;
    }
    // Marks the system complete. Callers must have checked local
    // confluence and supply the termination argument as `note`.
    void mark_complete(std::string note);

    // Leftmost-innermost rewriting until irreducible or `max_steps`
    // rule applications; nullopt when the budget runs out.
    std::optional<std::string> rewrite_bounded(std::string const& w,
                                               std::size_t max_steps) const;
    bool irreducible(std::string const& w) const;

   private:
    std::string       _alphabet;
    std::vector<Rule> _rules;
    bool              _complete = false;
    std::string       _provenance;
  };

  // Rule file: one "lhs -> rhs" per line, "1" for the empty word, '#'
  // comments. The alphabet is every symbol that occurs.
  RewritingSystem parse_rules(std::string const& text);
  std::string     format_rules(RewritingSystem const& sys);

  // Unique irreducible descendant; refuses systems not flagged complete.
  std::string normalize(RewritingSystem const& sys, std::string const& w);

  struct CriticalPair {
    std::string overlap;
    std::string left;   // one-step descendant via the first rule
    std::string right;  // one-step descendant via the second rule
    std::string left_nf;
    std::string right_nf;
  };

  struct ConfluenceReport {
    std::size_t               pairs_checked = 0;
    std::vector<CriticalPair> failures;
    bool                      inconclusive = false;

    bool confluent() const noexcept {
      return failures.empty() && !inconclusive;
    }
  };

  ConfluenceReport critical_pairs_confluent(RewritingSystem const& sys,
                                            std::size_t budget = 10000);

  enum class BsVariant { positive, negative };

  // The complete systems for BS(m,n) = <a,t | t a^m t^-1 = a^n>,
  // 1 <= m < n, over the symbols a, A, t, T. Confluence is checked on
  // construction; termination is recorded as a note.
  RewritingSystem bs_system(long m, long n, BsVariant variant);

  // Every rule whose left side is a word over S also has its right side
  // over S. Returns the first violating rule, if any.
  std::optional<RewritingSystem::Rule> closure_violation(
      RewritingSystem const& sys, std::set<char> const& S);

  // Membership in Mon<S> for a set S of symbols, by checking whether
  // the normal form of w is a word over S. Throws PreconditionError when
  // S* is not closed under the rules.
  Verdict closure_membership(RewritingSystem const& sys,
                             std::set<char> const&  S,
                             std::string const&     w);

  ////////////////////////////////////////////////////////////////////////
  // Small cancellation
  ////////////////////////////////////////////////////////////////////////

  struct SmallCancellationReport {
    std::size_t relator_length = 0;
    std::size_t max_piece      = 0;
    double      ratio          = 0.0;
    bool        c_prime_sixth  = false;  // strict: ratio < 1/6
  };

  SmallCancellationReport small_cancellation_check(Presentation const& p);

  // Dehn's algorithm. Construct once per presentation; the constructor
  // checks the metric small-cancellation condition.
  class DehnSolver {
   public:
    explicit DehnSolver(Presentation const& p);

    bool is_trivial(Letters const& w) const;
    // Word after exhaustive Dehn reduction.
    Letters dehn_reduce(Letters const& w) const;

    SmallCancellationReport const& report() const noexcept {
      return _report;
    }

   private:
    std::vector<Letters>    _cyclic;  // conjugates of r and r^-1
    std::size_t             _length;
    SmallCancellationReport _report;
  };

  bool dehn_word_problem(Presentation const& p, Word const& w);

}  // namespace submon

#endif  // SUBMON_REWRITE_HPP_
