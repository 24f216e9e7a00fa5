// Searches for factorizations of a group element over a finite set of
// words. Each routine builds candidate products in a fixed order, does
// the expensive part (keys or triviality tests) as a batch that may run
// in parallel, and merges serially in that same order, so results do
// not depend on the schedule.

#include <algorithm>
#include <unordered_map>

#include "submon/automata.hpp"
#include "submon/distortion.hpp"
#include "submon/errors.hpp"

namespace submon {

  namespace {
    struct Node {
      Letters     word;
      long        parent;
      std::size_t gen;
    };

    std::vector<std::size_t> chain(std::vector<Node> const& nodes, long k) {
      std::vector<std::size_t> out;
      for (; k > 0; k = nodes[static_cast<std::size_t>(k)].parent) {
        out.push_back(nodes[static_cast<std::size_t>(k)].gen);
      }
      std::reverse(out.begin(), out.end());
      return out;
    }

    Verdict start(std::vector<std::string> const& names, std::string method) {
      Verdict v;
      v.generators = names;
      v.trace(std::move(method));
      return v;
    }

    Verdict& found(Verdict& v, std::vector<std::size_t> witness) {
      v.outcome     = Outcome::member;
      v.witness     = std::move(witness);
      v.complete    = true;
      v.certificate = "witness product equals the query";
      return v;
    }

    std::vector<std::string> keys_of(WordProblemEngine const&    e,
                                     std::vector<Letters> const& words,
                                     bool                        parallel) {
      return batch_keys(e, words, parallel);
    }

    std::vector<char> trivial_of(WordProblemEngine const&    e,
                                 std::vector<Letters> const& words,
                                 bool                        parallel) {
      return parallel ? batch_is_trivial(e, words)
                      : batch_is_trivial_serial(e, words);
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Breadth-first search
  ////////////////////////////////////////////////////////////////////////

  Verdict bounded_search(WordProblemEngine const&        e,
                         std::vector<Letters> const&     W,
                         std::vector<std::string> const& names,
                         Letters const& w, SearchLimits const& limits,
                         Completeness const& completeness) {
    Verdict v = start(names, "bounded search (" + e.name() + ")");
    v.bound   = limits.max_factors;
    if (e.is_trivial(w)) {
      return found(v, {});
    }
    bool const        keyed = e.has_key();
    std::string const target = keyed ? *e.key(w) : std::string();
    Letters const     w_inv  = inverse(w);

    std::vector<Node>               nodes{{{}, -1, 0}};
    std::unordered_map<std::string, long> seen;
    if (keyed) {
      seen.emplace(*e.key({}), 0);
    }
    std::vector<long> frontier{0};
    bool              closed = false;
    for (std::size_t depth = 1; depth <= limits.max_factors; ++depth) {
      std::vector<Letters>                       cand;
      std::vector<std::pair<long, std::size_t>>  origin;
      if (nodes.size() + frontier.size() * W.size() > limits.max_nodes) {
        v.trace(semi_decision("node budget reached at depth "
                                  + std::to_string(depth - 1),
                              limits.max_nodes));
        v.bound = depth - 1;
        v.certificate = "search budget exhausted";
        return v;
      }
      for (long f : frontier) {
        for (std::size_t g = 0; g < W.size(); ++g) {
          cand.push_back(multiply(nodes[static_cast<std::size_t>(f)].word, W[g]));
          origin.emplace_back(f, g);
        }
      }
      std::vector<long> next;
      if (keyed) {
        auto keys = keys_of(e, cand, limits.parallel);
        for (std::size_t k = 0; k < cand.size(); ++k) {
          if (seen.count(keys[k])) {
            continue;
          }
          nodes.push_back({std::move(cand[k]), origin[k].first, origin[k].second});
          long id = static_cast<long>(nodes.size()) - 1;
          if (keys[k] == target) {
            return found(v, chain(nodes, id));
          }
          seen.emplace(keys[k], id);
          next.push_back(id);
        }
      } else {
        std::vector<Letters> test;
        for (auto const& c : cand) {
          test.push_back(multiply(c, w_inv));
        }
        auto triv = trivial_of(e, test, limits.parallel);
        for (std::size_t k = 0; k < cand.size(); ++k) {
          nodes.push_back({std::move(cand[k]), origin[k].first, origin[k].second});
          long id = static_cast<long>(nodes.size()) - 1;
          if (triv[k]) {
            return found(v, chain(nodes, id));
          }
          next.push_back(id);
        }
      }
      frontier = std::move(next);
      if (frontier.empty()) {
        closed = true;
        break;
      }
    }
    v.outcome = Outcome::unknown;
    if (closed) {
      v.outcome     = Outcome::non_member;
      v.complete    = true;
      v.certificate = "every element of the submonoid was enumerated";
      v.trace(certified("finite submonoid exhausted"));
    } else if (completeness.certified) {
      v.outcome     = Outcome::non_member;
      v.complete    = true;
      v.certificate = "no factorization within the certified bound: "
                      + completeness.reason;
      v.trace(certified("bound " + std::to_string(limits.max_factors)));
    } else {
      v.certificate = "no factorization with at most "
                      + std::to_string(limits.max_factors) + " factors";
      v.trace(semi_decision("factor bound", limits.max_factors));
    }
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Functional-graded search
  ////////////////////////////////////////////////////////////////////////

  Verdict weighted_search(WordProblemEngine const&        e,
                          std::vector<Letters> const&     W,
                          std::vector<std::string> const& names,
                          std::vector<long> const&        psi,
                          Letters const& w, SearchLimits const& limits,
                          std::string const& provenance) {
    Verdict v = start(names, "weighted search on psi (" + e.name() + ")");
    if (!e.has_key()) {
      throw PreconditionError("weighted search needs an engine with keys");
    }
    std::vector<long> c;
    long              cmax = 1;
    for (auto const& x : W) {
      c.push_back(apply_functional(psi, x));
      if (c.back() < 1) {
        throw PreconditionError("functional is not positive on a generator");
      }
      cmax = std::max(cmax, c.back());
    }
    if (e.is_trivial(w)) {
      return found(v, {});
    }
    long const s = apply_functional(psi, w);
    v.bound      = static_cast<std::size_t>(std::max(s, 0L));
    if (s < 1) {
      v.outcome     = Outcome::non_member;
      v.complete    = true;
      v.certificate = "psi(w) = " + std::to_string(s)
                      + " but psi is at least 1 on every generator";
      v.trace(certified("functional obstruction (" + provenance + ")"));
      return v;
    }
    long const h   = (s + 1) / 2;
    long const top = std::max(h - 1, s - h);

    // level[r]: distinct elements that are products of psi-sum exactly r
    std::vector<Node> nodes{{{}, -1, 0}};
    std::vector<std::unordered_map<std::string, long>> level(
        static_cast<std::size_t>(top + 1));
    std::vector<std::vector<long>> order(static_cast<std::size_t>(top + 1));
    level[0].emplace(*e.key({}), 0);
    order[0].push_back(0);
    for (long r = 1; r <= top; ++r) {
      std::vector<Letters>                      cand;
      std::vector<std::pair<long, std::size_t>> origin;
      for (std::size_t g = 0; g < W.size(); ++g) {
        if (c[g] > r) {
          continue;
        }
        for (long id : order[static_cast<std::size_t>(r - c[g])]) {
          cand.push_back(multiply(nodes[static_cast<std::size_t>(id)].word, W[g]));
          origin.emplace_back(id, g);
        }
      }
      if (nodes.size() + cand.size() > limits.max_nodes) {
        v.certificate = "search budget exhausted";
        v.trace(semi_decision("node budget at psi level " + std::to_string(r),
                              limits.max_nodes));
        return v;
      }
      auto  keys = keys_of(e, cand, limits.parallel);
      auto& L    = level[static_cast<std::size_t>(r)];
      for (std::size_t k = 0; k < cand.size(); ++k) {
        if (L.count(keys[k])) {
          continue;
        }
        nodes.push_back({std::move(cand[k]), origin[k].first, origin[k].second});
        long id = static_cast<long>(nodes.size()) - 1;
        L.emplace(keys[k], id);
        order[static_cast<std::size_t>(r)].push_back(id);
      }
    }
    // A sequence of sum s splits where its prefix sum first reaches h:
    // a left part (sum < h) times one generator, then a right part.
    std::vector<Letters>                      query;
    std::vector<std::pair<long, std::size_t>> origin;
    std::vector<long>                         rest;
    for (long r = 0; r < h; ++r) {
      for (std::size_t g = 0; g < W.size(); ++g) {
        long sigma = r + c[g];
        if (sigma < h || sigma > s) {
          continue;
        }
        for (long id : order[static_cast<std::size_t>(r)]) {
          Letters left = multiply(nodes[static_cast<std::size_t>(id)].word, W[g]);
          query.push_back(multiply(inverse(left), w));
          origin.emplace_back(id, g);
          rest.push_back(s - sigma);
        }
      }
    }
    auto keys = keys_of(e, query, limits.parallel);
    for (std::size_t k = 0; k < query.size(); ++k) {
      auto const& R  = level[static_cast<std::size_t>(rest[k])];
      auto        it = R.find(keys[k]);
      if (it != R.end()) {
        auto witness = chain(nodes, origin[k].first);
        witness.push_back(origin[k].second);
        auto right = chain(nodes, it->second);
        witness.insert(witness.end(), right.begin(), right.end());
        return found(v, witness);
      }
    }
    v.outcome     = Outcome::non_member;
    v.complete    = true;
    v.certificate = "no product of generators has psi-sum "
                    + std::to_string(s) + " and equals w";
    v.trace(certified("psi-graded (" + provenance + ")"));
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Search guided by a free image
  ////////////////////////////////////////////////////////////////////////

  Verdict guided_search(WordProblemEngine const&        e,
                        std::vector<Letters> const&     W,
                        std::vector<std::string> const& names,
                        GroupHom const& f, GradedCertificate const& cert,
                        Letters const& w, SearchLimits const& limits) {
    Verdict v = start(names, "search guided by free image (" + e.name() + ")");
    if (cert.kind != CertificateKind::code || !e.has_key()) {
      throw PreconditionError("guided search needs a code certificate and "
                              "an engine with keys");
    }
    std::vector<std::vector<std::size_t>> parse(W.size());
    for (std::size_t g = 0; g < W.size(); ++g) {
      auto p = literal_factorizations(cert.basis, reduce(f.apply(W[g])), 1);
      if (p.empty()) {
        throw PreconditionError("generator image outside the certified basis");
      }
      parse[g] = p.front();
    }
    if (e.is_trivial(w)) {
      return found(v, {});
    }
    auto target = literal_factorizations(cert.basis, reduce(f.apply(w)), 1);
    if (target.empty()) {
      v.outcome     = Outcome::non_member;
      v.complete    = true;
      v.bound       = 0;
      v.certificate = "f(w) is not a product of the free basis of f(M)";
      v.trace(certified("free image (" + cert.budget.to_string() + ")"));
      return v;
    }
    auto const&       seq = target.front();
    std::size_t const L   = seq.size();
    v.bound               = L;

    std::vector<Node> nodes{{{}, -1, 0}};
    std::vector<std::unordered_map<std::string, long>> at(L + 1);
    std::vector<std::vector<long>>                     order(L + 1);
    at[0].emplace(*e.key({}), 0);
    order[0].push_back(0);
    for (std::size_t i = 0; i < L; ++i) {
      if (order[i].empty()) {
        continue;
      }
      std::vector<Letters>                      cand;
      std::vector<std::pair<long, std::size_t>> origin;
      std::vector<std::size_t>                  dest;
      for (std::size_t g = 0; g < W.size(); ++g) {
        auto const& pg = parse[g];
        if (i + pg.size() > L
            || !std::equal(pg.begin(), pg.end(), seq.begin() + static_cast<long>(i))) {
          continue;
        }
        for (long id : order[i]) {
          cand.push_back(multiply(nodes[static_cast<std::size_t>(id)].word, W[g]));
          origin.emplace_back(id, g);
          dest.push_back(i + pg.size());
        }
      }
      if (nodes.size() + cand.size() > limits.max_nodes) {
        v.certificate = "search budget exhausted";
        v.trace(semi_decision("node budget at parse position "
                                  + std::to_string(i),
                              limits.max_nodes));
        return v;
      }
      auto keys = keys_of(e, cand, limits.parallel);
      for (std::size_t k = 0; k < cand.size(); ++k) {
        auto& M = at[dest[k]];
        if (M.count(keys[k])) {
          continue;
        }
        nodes.push_back({std::move(cand[k]), origin[k].first, origin[k].second});
        long id = static_cast<long>(nodes.size()) - 1;
        M.emplace(keys[k], id);
        order[dest[k]].push_back(id);
      }
    }
    auto it = at[L].find(*e.key(w));
    if (it != at[L].end()) {
      return found(v, chain(nodes, it->second));
    }
    v.outcome     = Outcome::non_member;
    v.complete    = true;
    v.certificate = "no factorization lifts the unique parse of f(w)";
    v.trace(certified("free image (" + cert.budget.to_string() + ")"));
    return v;
  }

}  // namespace submon
