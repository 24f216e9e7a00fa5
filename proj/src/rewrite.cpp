#include "submon/rewrite.hpp"

#include <algorithm>
#include <sstream>

namespace submon {

  RewritingSystem::RewritingSystem(std::string alphabet, std::vector<Rule> rules)
      : _alphabet(std::move(alphabet)), _rules(std::move(rules)) {
    for (auto const& [lhs, rhs] : _rules) {
      if (lhs.empty()) {
        throw PreconditionError("rewriting rule with empty left side");
      }
      for (char c : lhs + rhs) {
        if (_alphabet.find(c) == std::string::npos) {
          throw PreconditionError(std::string("rule symbol '") + c
                                  + "' not in the alphabet");
        }
      }
    }
  }

  void RewritingSystem::mark_complete(std::string note) {
    _complete   = true;
    _provenance = std::move(note);
  }

  std::optional<std::string> RewritingSystem::rewrite_bounded(
      std::string const& w, std::size_t max_steps) const {
    std::string out;
    std::string pending(w.rbegin(), w.rend());
    std::size_t steps = 0;
    out.reserve(w.size());
    while (!pending.empty()) {
      out.push_back(pending.back());
      pending.pop_back();
      for (auto const& [lhs, rhs] : _rules) {
        if (out.size() >= lhs.size()
            && out.compare(out.size() - lhs.size(), lhs.size(), lhs) == 0) {
          if (++steps > max_steps) {
            return std::nullopt;
          }
          out.resize(out.size() - lhs.size());
          pending.append(rhs.rbegin(), rhs.rend());
          break;
        }
      }
    }
    return out;
  }

  bool RewritingSystem::irreducible(std::string const& w) const {
    for (auto const& [lhs, rhs] : _rules) {
      if (w.find(lhs) != std::string::npos) {
        return false;
      }
    }
    return true;
  }

  RewritingSystem parse_rules(std::string const& text) {
    std::vector<RewritingSystem::Rule> rules;
    std::set<char>                     symbols;
    std::istringstream                 in(text);
    std::string                        line;
    std::size_t                        offset = 0;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
      std::string body = line.substr(0, line.find('#'));
      if (trim(body).empty()) {
        offset += line.size() + 1;
        continue;
      }
      auto arrow = body.find("->");
      if (arrow == std::string::npos) {
        throw ParseError("expected 'lhs -> rhs'", offset);
      }
      std::string lhs = trim(body.substr(0, arrow));
      std::string rhs = trim(body.substr(arrow + 2));
      lhs.erase(std::remove(lhs.begin(), lhs.end(), ' '), lhs.end());
      rhs.erase(std::remove(rhs.begin(), rhs.end(), ' '), rhs.end());
      if (rhs == "1") {
        rhs.clear();
      }
      if (lhs.empty() || lhs == "1") {
        throw ParseError("empty left-hand side", offset);
      }
      symbols.insert(lhs.begin(), lhs.end());
      symbols.insert(rhs.begin(), rhs.end());
      rules.emplace_back(lhs, rhs);
      offset += line.size() + 1;
    }
    return RewritingSystem(std::string(symbols.begin(), symbols.end()),
                           std::move(rules));
  }

  std::string format_rules(RewritingSystem const& sys) {
    std::string out;
    for (auto const& [lhs, rhs] : sys.rules()) {
      out += lhs + " -> " + (rhs.empty() ? "1" : rhs) + '\n';
    }
    return out;
  }

  std::string normalize(RewritingSystem const& sys, std::string const& w) {
    if (!sys.complete()) {
      throw PreconditionError("normalize needs a complete system; use "
                              "rewrite_bounded for unchecked systems");
    }
    for (char c : w) {
      if (sys.alphabet().find(c) == std::string::npos) {
        throw PreconditionError(std::string("symbol '") + c
                                + "' not in the system alphabet");
      }
    }
    // A complete system terminates, so the budget is only a guard
    // against a wrongly flagged system.
    auto r = sys.rewrite_bounded(w, std::size_t(1) << 40);
    return *r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Critical pairs
  ////////////////////////////////////////////////////////////////////////

  ConfluenceReport critical_pairs_confluent(RewritingSystem const& sys,
                                            std::size_t            budget) {
    ConfluenceReport report;
    auto const&      R = sys.rules();
    auto check = [&](std::string const& overlap, std::string const& left,
                     std::string const& right) {
      ++report.pairs_checked;
      auto l = sys.rewrite_bounded(left, budget);
      auto r = sys.rewrite_bounded(right, budget);
      if (!l || !r) {
        report.inconclusive = true;
        return;
      }
      if (*l != *r) {
        report.failures.push_back({overlap, left, right, *l, *r});
      }
    };
    for (std::size_t i = 0; i < R.size(); ++i) {
      auto const& [l1, r1] = R[i];
      for (std::size_t j = 0; j < R.size(); ++j) {
        auto const& [l2, r2] = R[j];
        // Proper overlaps: a suffix of l1 is a prefix of l2.
        for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
          if (l1.compare(l1.size() - k, k, l2, 0, k) == 0) {
            std::string overlap = l1 + l2.substr(k);
            check(overlap, r1 + l2.substr(k),
                  l1.substr(0, l1.size() - k) + r2);
          }
        }
        // Inclusions: l2 occurs inside l1.
        if (l2.size() <= l1.size()) {
          for (std::size_t p = 0; p + l2.size() <= l1.size(); ++p) {
            if (i == j && p == 0) {
              continue;
            }
            if (l1.compare(p, l2.size(), l2) == 0) {
              check(l1, r1,
                    l1.substr(0, p) + r2 + l1.substr(p + l2.size()));
            }
          }
        }
      }
    }
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Baumslag-Solitar systems
  ////////////////////////////////////////////////////////////////////////

  RewritingSystem bs_system(long m, long n, BsVariant variant) {
    if (!(1 <= m && m < n)) {
      throw PreconditionError("bs_system needs 1 <= m < n (got m="
                              + std::to_string(m) + ", n="
                              + std::to_string(n) + ")");
    }
    auto rep = [](char c, long k) {
      return std::string(static_cast<std::size_t>(k), c);
    };
    std::vector<RewritingSystem::Rule> rules;
    if (variant == BsVariant::positive) {
      rules = {{"aA", ""},
               {"Aa", ""},
               {"tT", ""},
               {"Tt", ""},
               {rep('a', n) + "t", "t" + rep('a', m)},
               {"At", rep('a', n - 1) + "t" + rep('A', m)},
               {rep('a', m) + "T", "T" + rep('a', n)},
               {"AT", rep('a', m - 1) + "T" + rep('A', n)}};
    } else {
      rules = {{"Aa", ""},
               {"aA", ""},
               {"tT", ""},
               {"Tt", ""},
               {rep('A', n) + "t", "t" + rep('A', m)},
               {"at", rep('A', n - 1) + "t" + rep('a', m)},
               {rep('A', m) + "T", "T" + rep('A', n)},
               {"aT", rep('A', m - 1) + "T" + rep('a', n)}};
    }
    RewritingSystem sys("AaTt", std::move(rules));
    auto            report = critical_pairs_confluent(sys);
    if (report.confluent()) {
      sys.mark_complete(
          "local confluence: " + std::to_string(report.pairs_checked)
          + " critical pairs joinable; termination: every rule either "
            "shortens the word or moves t-letters left past a-blocks, "
            "which decreases the tuple of a-block lengths to the left of "
            "each t-letter (argued, not machine-checked)");
    }
    return sys;
  }

  std::optional<RewritingSystem::Rule> closure_violation(
      RewritingSystem const& sys, std::set<char> const& S) {
    auto over = [&](std::string const& w) {
      return std::all_of(w.begin(), w.end(),
                         [&](char c) { return S.count(c) > 0; });
    };
    for (auto const& rule : sys.rules()) {
      if (over(rule.first) && !over(rule.second)) {
        return rule;
      }
    }
    return std::nullopt;
  }

  Verdict closure_membership(RewritingSystem const& sys,
                             std::set<char> const& S, std::string const& w) {
    if (auto bad = closure_violation(sys, S)) {
      throw PreconditionError(
          "generator set not closed under rule " + bad->first + " -> "
          + (bad->second.empty() ? std::string("1") : bad->second));
    }
    std::string nf = normalize(sys, w);
    Verdict     v;
    for (char c : S) {
      v.generators.emplace_back(1, c);
    }
    v.complete = true;
    v.trace(certified("closure normal form"));
    for (char c : nf) {
      auto it = S.find(c);
      if (it == S.end()) {
        v.outcome     = Outcome::non_member;
        v.certificate = "normal form " + (nf.empty() ? "1" : nf)
                        + " contains '" + std::string(1, c)
                        + "', which is not a generator";
        v.witness.clear();
        return v;
      }
      v.witness.push_back(
          static_cast<std::size_t>(std::distance(S.begin(), it)));
    }
    v.outcome     = Outcome::member;
    v.certificate = "normal form " + (nf.empty() ? "1" : nf)
                    + " is a word over the generators";
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Small cancellation and Dehn's algorithm
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::vector<Letters> cyclic_words(Letters const& r) {
      std::vector<Letters> out;
      for (Letters const& base : {r, inverse(r)}) {
        for (std::size_t i = 0; i < base.size(); ++i) {
          Letters c(base.begin() + static_cast<std::ptrdiff_t>(i), base.end());
          c.insert(c.end(), base.begin(),
                   base.begin() + static_cast<std::ptrdiff_t>(i));
          out.push_back(std::move(c));
        }
      }
      return out;
    }

    Letters checked_relator(Presentation const& p) {
      Letters const& r = p.relator().letters();
      if (!is_cyclically_reduced(r) || r.empty()) {
        throw PreconditionError("relator must be nonempty and cyclically "
                                "reduced");
      }
      return r;
    }
  }  // namespace

  SmallCancellationReport small_cancellation_check(Presentation const& p) {
    Letters r = checked_relator(p);
    auto    words = cyclic_words(r);
    SmallCancellationReport rep;
    rep.relator_length = r.size();
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        std::size_t k = 0;
        while (k < r.size() && words[i][k] == words[j][k]) {
          ++k;
        }
        rep.max_piece = std::max(rep.max_piece, k);
      }
    }
    rep.ratio = static_cast<double>(rep.max_piece)
                / static_cast<double>(rep.relator_length);
    rep.c_prime_sixth = 6 * rep.max_piece < rep.relator_length;
    return rep;
  }

  DehnSolver::DehnSolver(Presentation const& p)
      : _cyclic(), _length(0), _report(small_cancellation_check(p)) {
    if (!_report.c_prime_sixth) {
      throw PreconditionError("presentation does not satisfy C'(1/6); "
                              "Dehn's algorithm is not valid");
    }
    Letters r = checked_relator(p);
    _cyclic   = cyclic_words(r);
    _length   = r.size();
  }

  Letters DehnSolver::dehn_reduce(Letters const& w) const {
    Letters cur = reduce(w);
    bool    progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < cur.size() && !progress; ++i) {
        for (auto const& R : _cyclic) {
          std::size_t k = 0;
          while (k < R.size() && i + k < cur.size() && cur[i + k] == R[k]) {
            ++k;
          }
          if (2 * k > _length) {
            // R = u v with u = cur[i, i+k); replace u by v^-1.
            Letters v(R.begin() + static_cast<std::ptrdiff_t>(k), R.end());
            Letters next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(i));
            Letters vinv = inverse(v);
            next.insert(next.end(), vinv.begin(), vinv.end());
            next.insert(next.end(),
                        cur.begin() + static_cast<std::ptrdiff_t>(i + k),
                        cur.end());
            cur      = reduce(next);
            progress = true;
            break;
          }
        }
      }
    }
    return cur;
  }

  bool DehnSolver::is_trivial(Letters const& w) const {
    return dehn_reduce(w).empty();
  }

  bool dehn_word_problem(Presentation const& p, Word const& w) {
    if (!same_alphabet(p.alphabet(), w.alphabet())) {
      throw PreconditionError("word and presentation alphabets differ");
    }
    return DehnSolver(p).is_trivial(w.letters());
  }

}  // namespace submon
