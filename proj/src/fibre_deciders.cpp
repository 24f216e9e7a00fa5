// Deciders that work in the fibre of a two-generator group with a
// stable letter: Baumslag-Solitar groups, the Burns group, orbit
// submonoids of free-group automorphisms and positivity.

#include <algorithm>
#include <map>
#include <stdexcept>

#include "submon/automata.hpp"
#include "submon/builtins.hpp"
#include "submon/deciders.hpp"
#include "submon/errors.hpp"
#include "submon/rewrite.hpp"

namespace submon {

  namespace detail {
    std::vector<std::string> names_of(Alphabet const&             A,
                                      std::vector<Letters> const& W);
    void    verify_member(Verdict& v, std::vector<Letters> const& W,
                          Letters const& w, WordProblemEngine const& e,
                          Presentation const* p);
    Verdict with_prefix(std::vector<std::string> const& pre, Verdict v);
  }  // namespace detail

  namespace {
    using detail::verify_member;
    using detail::with_prefix;

    Letter letter_of(char c) {
      switch (c) {
        case 'a':
          return 1;
        case 'A':
          return -1;
        case 't':
          return 2;
        case 'T':
          return -2;
      }
      throw PreconditionError(std::string("'") + c
                              + "' is not one of a, A, t, T");
    }

    void check_magnus_set(std::set<char> const& S) {
      if (S.empty() || S.size() >= 4) {
        throw PreconditionError("S must be a proper nonempty subset of "
                                "{a, A, t, T}");
      }
      for (char c : S) {
        letter_of(c);
      }
    }

    Verdict trivial_member(std::vector<std::string> const& names,
                           std::string const&              how) {
      Verdict v;
      v.generators  = names;
      v.outcome     = Outcome::member;
      v.complete    = true;
      v.certificate = "w is trivial (empty product)";
      v.trace("word problem (" + how + ")");
      return v;
    }

    Verdict certified_non_member(std::vector<std::string> const& names,
                                 std::string const& tag, std::string why) {
      Verdict v;
      v.generators  = names;
      v.outcome     = Outcome::non_member;
      v.complete    = true;
      v.certificate = std::move(why);
      v.trace(certified(tag));
      return v;
    }

    ////////////////////////////////////////////////////////////////////
    // Rational chains in the fibre
    ////////////////////////////////////////////////////////////////////

    // Positions in the submonoid generator list of x, x^-1, s, s^-1
    // (x the fibre generator, s the stable letter), where present.
    struct ChainLetters {
      std::optional<std::size_t> x_pos, x_neg, s_pos, s_neg;
    };

    class Chain {
     public:
      Chain(std::vector<OmegaWord> stages, bool pos, bool neg)
          : _stages(std::move(stages)), _pos(pos), _neg(neg) {}

      void index(OmegaWord const& u) {
        for (auto const& x : u) {
          _index.emplace(OmegaGen{x.gen, x.sub}, _index.size() + 1);
        }
      }

      Letters encode(OmegaWord const& u) const {
        Letters out;
        for (auto const& x : u) {
          out.push_back(static_cast<Letter>(_index.at({x.gen, x.sub}))
                        * x.sign);
        }
        return out;
      }

      // Cheapest way to write w as u_from^e_from ... u_last^e_last, the
      // cost being the sum of |e|; kInfinity when impossible.
      std::size_t cost(std::size_t from, Letters const& w) const {
        SaturatedAcceptor A(1);
        A.set_initial(0);
        std::size_t state = 0;
        for (std::size_t k = from; k < _stages.size(); ++k) {
          Letters u = encode(_stages[k]);
          for (int sign : {1, -1}) {
            Letters petal = sign > 0 ? u : inverse(u);
            if (!(sign > 0 ? _pos : _neg) || petal.empty()) {
              continue;
            }
            std::size_t prev = state;
            for (std::size_t i = 0; i < petal.size(); ++i) {
              std::size_t next = i + 1 == petal.size() ? state : A.add_state();
              A.add_edge(prev, petal[i], next, i == 0 ? 1 : 0);
              prev = next;
            }
          }
          if (k + 1 < _stages.size()) {
            std::size_t next = A.add_state();
            A.add_edge(state, 0, next, 0);
            state = next;
          }
        }
        A.set_final(state);
        A.saturate();
        return A.min_cost(reduce(w));
      }

      // Exponents realising the cheapest decomposition.
      std::optional<std::vector<long>> exponents(Letters w) const {
        std::size_t c = cost(0, w);
        if (c == kInfinity) {
          return std::nullopt;
        }
        std::vector<long> out;
        for (std::size_t k = 0; k < _stages.size(); ++k) {
          Letters u = encode(_stages[k]);
          bool    done = false;
          for (long mag = 0; mag <= static_cast<long>(c) && !done; ++mag) {
            for (long e : {mag, -mag}) {
              if ((e > 0 && !_pos) || (e < 0 && !_neg) || (mag == 0 && e != 0)
                  || (mag != 0 && e == 0)) {
                continue;
              }
              Letters rest = multiply(power(u, -e), w);
              bool    ok   = k + 1 == _stages.size()
                                 ? rest.empty()
                                 : cost(k + 1, rest) <= c - static_cast<std::size_t>(mag);
              if (ok) {
                out.push_back(e);
                w    = rest;
                c   -= static_cast<std::size_t>(mag);
                done = true;
                break;
              }
            }
          }
          if (!done) {
            throw std::logic_error("chain decomposition lost its path");
          }
        }
        return out;
      }

     private:
      std::vector<OmegaWord>           _stages;
      bool                             _pos, _neg;
      std::map<OmegaGen, std::size_t>  _index;
    };

    // w in Mon<S> for S inside {x, x^-1, s, s^-1} not containing both
    // s and s^-1: with w = s^j beta, beta must lie in the product over
    // the stages of <theta^i(x_0)> (the allowed signs only).
    Verdict fibre_chain_decide(FiberNormalForm const&          fnf,
                               WordProblemEngine const&        engine,
                               Presentation const&             p,
                               std::size_t                     x,
                               ChainLetters const&             idx,
                               std::vector<std::string> const& names,
                               std::vector<Letters> const&     W,
                               Letters const&                  w) {
      if (engine.is_trivial(w)) {
        return trivial_member(names, engine.name());
      }
      auto [j, beta] = fnf.normal_form(w);
      std::string s  = fnf.alphabet()->name(fnf.stable());
      if ((j > 0 && !idx.s_pos) || (j < 0 && !idx.s_neg)) {
        return certified_non_member(
            names, "exponent sum",
            s + "-exponent sum " + std::to_string(j)
                + " has a sign no generator provides");
      }
      long const             J = std::labs(j);
      std::vector<OmegaWord> stages;
      for (long k = 0; k <= J; ++k) {
        long shift = j >= 0 ? k - j : J - k;
        stages.push_back(fnf.shift_in_fibre({{x, 0, 1}}, shift));
      }
      Chain chain(stages, idx.x_pos.has_value(), idx.x_neg.has_value());
      chain.index(beta);
      for (auto const& u : stages) {
        chain.index(u);
      }
      Letters b    = chain.encode(beta);
      auto    exps = chain.exponents(b);
      if (!exps) {
        return certified_non_member(
            names, "rational chain in the free fibre",
            "fibre part " + format_omega(*fnf.alphabet(), beta)
                + " is not in the product of the " + std::to_string(J + 1)
                + " cyclic submonoids");
      }
      Verdict v;
      v.generators = names;
      for (std::size_t k = 0; k < exps->size(); ++k) {
        long e = (*exps)[k];
        v.witness.insert(v.witness.end(), static_cast<std::size_t>(std::labs(e)),
                         e > 0 ? *idx.x_pos : *idx.x_neg);
        if (k + 1 < exps->size()) {
          v.witness.push_back(j > 0 ? *idx.s_pos : *idx.s_neg);
        }
      }
      v.outcome     = Outcome::member;
      v.complete    = true;
      v.certificate = "fibre part decomposes along the stages";
      v.trace(certified("rational chain in the free fibre"));
      verify_member(v, W, w, engine, &p);
      return v;
    }

    ////////////////////////////////////////////////////////////////////
    // Orbits
    ////////////////////////////////////////////////////////////////////

    struct OrbitResult {
      Verdict                                     verdict;
      std::vector<std::pair<std::size_t, long>>   factors;  // (seed, i)
    };

    OrbitResult orbit_core(GroupHom const& theta, GroupHom const& theta_inv,
                           std::vector<Letters> const& Z, Letters const& w_raw,
                           DeciderOptions const& opt) {
      auto const&  A = *theta.source();
      Letters      w = reduce(w_raw);
      std::size_t  n = w.size();
      std::size_t const cap    = n + 64;
      std::size_t const window = 2;
      OrbitResult  out;
      Verdict&     v = out.verdict;
      std::vector<Letters>                       words, everything;
      bool                                       growth = true;
      for (std::size_t z = 0; z < Z.size(); ++z) {
        for (int dir : {1, -1}) {
          GroupHom const& h   = dir > 0 ? theta : theta_inv;
          Letters         cur = reduce(Z[z]);
          long            i   = 0;
          if (dir < 0) {
            cur = reduce(h.apply(cur));
            i   = -1;
          }
          std::size_t prev_len = 0, rising = 0, steps = 0;
          bool        beyond   = false;
          for (; steps < cap; ++steps, i += dir, cur = reduce(h.apply(cur))) {
            everything.push_back(cur);
            if (cur.size() <= n && !cur.empty()) {
              words.push_back(cur);
              out.factors.emplace_back(z, i);
            }
            rising = steps > 0 && cur.size() > prev_len ? rising + 1 : 0;
            beyond = beyond || cur.size() > n;
            prev_len = cur.size();
            if (beyond && rising >= window) {
              break;
            }
          }
          growth = growth && steps < cap;
        }
      }
      bool clean = no_cancellation(everything);
      for (auto const& [z, i] : out.factors) {
        v.generators.push_back("theta^" + std::to_string(i) + "("
                               + format_letters(A, Z[z]) + ")");
      }
      v.bound = n;
      if (w.empty()) {
        v.outcome     = Outcome::member;
        v.complete    = true;
        v.certificate = "w is trivial (empty product)";
        v.trace("free reduction");
        return out;
      }
      auto f = literal_factorizations(words, w, 1);
      if (!f.empty()) {
        v.outcome     = Outcome::member;
        v.complete    = true;
        v.witness     = f.front();
        v.certificate = "w is a literal concatenation of orbit words";
        v.trace("literal decomposition over orbit words of length <= "
                + std::to_string(n));
        return out;
      }
      if (growth && clean) {
        v.outcome     = Outcome::non_member;
        v.complete    = true;
        v.certificate = "orbit words grow in both directions and never "
                        "cancel; no literal decomposition of length "
                        + std::to_string(n);
        v.trace(certified("orbit growth and no cancellation (window "
                          + std::to_string(window) + ")"));
      } else {
        v.certificate = growth ? "orbit words cancel" : "no growth certificate";
        v.trace(semi_decision("orbit words up to length " + std::to_string(n),
                              opt.search.max_factors));
      }
      return out;
    }
  }  // namespace

  Verdict orbit_membership(GroupHom const& theta, GroupHom const& theta_inv,
                           std::vector<Letters> const& Z, Letters const& w,
                           DeciderOptions const& opt) {
    return orbit_core(theta, theta_inv, Z, w, opt).verdict;
  }

  ////////////////////////////////////////////////////////////////////////
  // Burns group
  ////////////////////////////////////////////////////////////////////////

  Verdict decide_burns_magnus(std::set<char> const& S, Letters const& w,
                              DeciderOptions const& opt) {
    check_magnus_set(S);
    auto                     p = burns_group();
    BrittonEngine            engine(p, 1);
    auto const&              fnf = engine.fibre();
    std::vector<std::string> names;
    std::vector<Letters>     W;
    ChainLetters             idx;
    for (char c : S) {
      names.emplace_back(1, c);
      W.push_back({letter_of(c)});
      auto k = W.size() - 1;
      (c == 'a' ? idx.x_pos : c == 'A' ? idx.x_neg : c == 't' ? idx.s_pos
                                                               : idx.s_neg)
          = k;
    }
    if (!(idx.s_pos && idx.s_neg)) {
      return with_prefix({"Burns group, stable letter t, fibre basis a[0] a[1]"},
                         fibre_chain_decide(fnf, engine, p, 0, idx, names, W, w));
    }
    if (engine.is_trivial(w)) {
      return trivial_member(names, engine.name());
    }
    auto [j, beta] = fnf.normal_form(w);
    std::vector<std::size_t> prefix(static_cast<std::size_t>(std::labs(j)),
                                    j >= 0 ? *idx.s_pos : *idx.s_neg);
    std::vector<std::string> steps{
        "normal form t^" + std::to_string(j) + " . "
        + format_omega(*p.alphabet(), beta)};
    if (!idx.x_pos && !idx.x_neg) {
      if (!beta.empty()) {
        return with_prefix(steps, certified_non_member(
                                      names, "normal form",
                                      "fibre part is nontrivial"));
      }
      Verdict v;
      v.generators  = names;
      v.outcome     = Outcome::member;
      v.complete    = true;
      v.witness     = prefix;
      v.certificate = "w is a power of t";
      v.trace(certified("normal form"));
      verify_member(v, W, w, engine, &p);
      return with_prefix(steps, std::move(v));
    }
    // beta over the fibre basis a[0], a[1] as a word in F(a0, a1)
    auto    F = make_alphabet({"a0", "a1"});
    Letters b;
    for (auto const& x : beta) {
      b.push_back(make_letter(static_cast<std::size_t>(x.sub), x.sign));
    }
    bool const pos = idx.x_pos.has_value();
    GroupHom   theta(F, F, {{2}, {2, -1, 2}});
    GroupHom   theta_inv(F, F, {{1, -2, 1}, {1}});
    auto       orbit = orbit_core(theta, theta_inv, {{1}}, pos ? b : inverse(b),
                                  opt);
    Verdict    v     = orbit.verdict;
    steps.push_back("membership of the fibre part in the orbit submonoid of "
                    "theta: a0 -> a1, a1 -> a1 a0' a1");
    v.generators = names;
    if (v.member()) {
      auto factors = v.witness;
      if (!pos) {
        std::reverse(factors.begin(), factors.end());
      }
      v.witness = prefix;
      for (std::size_t f : factors) {
        long i  = orbit.factors[f].second;
        auto in = static_cast<std::size_t>(std::labs(i));
        // theta^i(a0) = t^i a t^-i
        v.witness.insert(v.witness.end(), in, i >= 0 ? *idx.s_pos : *idx.s_neg);
        v.witness.push_back(pos ? *idx.x_pos : *idx.x_neg);
        v.witness.insert(v.witness.end(), in, i >= 0 ? *idx.s_neg : *idx.s_pos);
      }
      verify_member(v, W, w, engine, &p);
    }
    return with_prefix(steps, std::move(v));
  }

  ////////////////////////////////////////////////////////////////////////
  // Positivity
  ////////////////////////////////////////////////////////////////////////

  Verdict decide_positivity_fbc(Presentation const& p, Letters const& w,
                                DeciderOptions const&) {
    auto const& A = *p.alphabet();
    if (A.size() != 2 || !p.one_relator()) {
      throw PreconditionError("positivity decider needs <a, b | r>");
    }
    Letters r = cyclic_reduce(p.relator().letters()).first;
    auto    s = magnus_stable_letter(p);
    if (!s) {
      bool zero = exponent_sum(r, 0) == 0 || exponent_sum(r, 1) == 0;
      throw PreconditionError(
          zero ? "outside the verified class: the max/min condition fails "
                 "for every generator with exponent sum 0 (or that "
                 "generator does not occur in the relator)"
               : "no generator has exponent sum 0 in the relator");
    }
    std::size_t  x = 1 - *s;
    ChainLetters idx;
    idx.x_pos = x;
    idx.s_pos = *s;
    std::vector<std::string> names{A.name(0), A.name(1)};
    std::vector<Letters>     W{{1}, {2}};
    BrittonEngine            engine(p, *s);
    auto const&              fnf = engine.fibre();
    std::string              basis;
    for (long k = fnf.chosen_lo(); k <= fnf.chosen_hi(); ++k) {
      basis += ' ' + format_omega_gen(A, {fnf.chosen(), k});
    }
    return with_prefix(
        {"stable letter " + A.name(*s) + ": "
             + format_omega(A, fnf.relator_report().word) + ", max/min PASS",
         "fibre basis" + basis},
        fibre_chain_decide(fnf, engine, p, x, idx, names, W, w));
  }

  ////////////////////////////////////////////////////////////////////////
  // Baumslag-Solitar
  ////////////////////////////////////////////////////////////////////////

  Verdict decide_bs_magnus(long m, long n, std::set<char> const& S,
                           Letters const& w_in, DeciderOptions const& opt) {
    check_magnus_set(S);
    if (m == n || m == 0 || n == 0) {
      throw PreconditionError(
          "BS(" + std::to_string(m) + "," + std::to_string(n)
          + ") with m = n or mn = 0 is virtually free-times-cyclic; its "
            "submonoid membership is an external result and is refused here");
    }
    std::vector<std::string> steps;
    bool swap_t = false;
    long M = m, N = n;
    if (M < 0 && N < 0) {
      M = -M, N = -N;
      steps.push_back("BS(-m,-n) = BS(m,n)");
    }
    if (M > 0 && N > 0 && M > N) {
      std::swap(M, N);
      swap_t = true;
      steps.push_back("BS(m,n) = BS(n,m) with t replaced by t^-1");
    }
    auto flip = [&](char c) {
      if (!swap_t) {
        return c;
      }
      return c == 't' ? 'T' : c == 'T' ? 't' : c;
    };
    Letters w = w_in;
    if (swap_t) {
      for (Letter& x : w) {
        if (gen_of(x) == 1) {
          x = -x;
        }
      }
    }
    std::vector<std::string> names;
    std::vector<char>        sx;  // transformed letter per generator
    std::vector<Letters>     W;
    for (char c : S) {
      names.emplace_back(1, c);
      sx.push_back(flip(c));
      W.push_back({letter_of(sx.back())});
    }
    std::set<char> SX(sx.begin(), sx.end());
    auto has = [&](char c) { return SX.count(c) > 0; };
    auto pos = [&](char c) {
      return static_cast<std::size_t>(std::find(sx.begin(), sx.end(), c)
                                      - sx.begin());
    };
    BsEngine    engine(M, N);
    auto        p = bs_group(M, N);
    auto finish = [&](Verdict v) {
      v.generators = names;
      verify_member(v, W, w, engine, nullptr);
      return with_prefix(steps, std::move(v));
    };
    if (engine.is_trivial(w)) {
      return finish(trivial_member(names, engine.name()));
    }

    // Subgroup cases: powers of a or of t.
    bool only_a = !has('t') && !has('T');
    bool only_t = !has('a') && !has('A');
    if (only_a || only_t) {
      char    up = only_a ? 'a' : 't', down = only_a ? 'A' : 'T';
      long    k;
      bool    in_subgroup;
      if (only_a) {
        auto nf     = engine.normal_form(w);
        in_subgroup = nf.stable.empty();
        k           = nf.powers.front();
      } else {
        k           = exponent_sum(w, 1);
        in_subgroup = engine.is_trivial(multiply(power({2}, -k), w));
      }
      std::string sub = std::string(1, up);
      if (!in_subgroup) {
        return finish(certified_non_member(
            names, "normal form", "w is not a power of " + sub));
      }
      if ((k > 0 && !has(up)) || (k < 0 && !has(down))) {
        return finish(certified_non_member(
            names, "normal form",
            "w = " + sub + "^" + std::to_string(k)
                + " but that sign is not generated"));
      }
      Verdict v;
      v.outcome     = Outcome::member;
      v.complete    = true;
      v.certificate = "w = " + sub + "^" + std::to_string(k);
      v.witness.assign(static_cast<std::size_t>(std::labs(k)),
                       pos(k > 0 ? up : down));
      v.trace(certified("normal-form power extraction"));
      return finish(std::move(v));
    }

    std::string word;
    for (Letter x : w) {
      word += gen_of(x) == 0 ? (x > 0 ? 'a' : 'A') : (x > 0 ? 't' : 'T');
    }
    if (M > 0 && N > 0) {
      auto sys     = bs_system(M, N, BsVariant::positive);
      auto variant = "positive";
      if (closure_violation(sys, SX)) {
        sys     = bs_system(M, N, BsVariant::negative);
        variant = "negative";
      }
      steps.push_back(std::string("complete rewriting system, ") + variant
                      + " variant, BS(" + std::to_string(M) + ","
                      + std::to_string(N) + ")");
      Verdict cv = closure_membership(sys, SX, word);
      // closure_membership indexes into the sorted transformed set
      std::vector<std::size_t> witness;
      for (std::size_t k : cv.witness) {
        witness.push_back(pos(*std::next(SX.begin(), static_cast<long>(k))));
      }
      cv.witness = witness;
      return finish(std::move(cv));
    }

    // m and n of opposite signs.
    if (has('t') && has('T')) {
      // Mon<a,t,T> and Mon<A,t,T> are the whole group.
      char x  = has('a') ? 'a' : 'A';
      int  sg = x == 'a' ? 1 : -1;
      // With p = -m > 0 (or q = -n > 0) the missing letter is positive:
      // m < 0: x^-1 = T x^n t x^(p-1);  n < 0: x^-1 = t x^m T x^(q-1).
      std::vector<std::size_t> inv;
      auto rep = [&](char c, long k) {
        inv.insert(inv.end(), static_cast<std::size_t>(k), pos(c));
      };
      if (M < 0) {
        rep('T', 1), rep(x, N), rep('t', 1), rep(x, -M - 1);
      } else {
        rep('t', 1), rep(x, M), rep('T', 1), rep(x, -N - 1);
      }
      Verdict v;
      for (Letter y : w) {
        if (gen_of(y) == 1) {
          v.witness.push_back(pos(y > 0 ? 't' : 'T'));
        } else if (sign_of(y) == sg) {
          v.witness.push_back(pos(x));
        } else {
          v.witness.insert(v.witness.end(), inv.begin(), inv.end());
        }
      }
      v.outcome     = Outcome::member;
      v.complete    = true;
      v.certificate = "Mon<S> is the whole group when m and n have "
                      "opposite signs";
      v.trace(certified("whole group"));
      return finish(std::move(v));
    }
    long j = exponent_sum(w, 1);
    if ((j > 0 && !has('t')) || (j < 0 && !has('T'))) {
      return finish(certified_non_member(
          names, "exponent sum",
          "t-exponent sum " + std::to_string(j)
              + " has a sign no generator provides"));
    }
    steps.push_back("no complete method for this case; bounded search");
    auto v = bounded_search(engine, W, names, w, opt.search);
    return finish(std::move(v));
  }

}  // namespace submon
