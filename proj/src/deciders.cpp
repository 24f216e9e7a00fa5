#include "submon/deciders.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "submon/builtins.hpp"
#include "submon/errors.hpp"
#include "submon/rewrite.hpp"

namespace submon {

  namespace detail {
    std::vector<std::string> names_of(Alphabet const&             A,
                                      std::vector<Letters> const& W) {
      std::vector<std::string> out;
      for (auto const& u : W) {
        out.push_back(format_letters(A, u));
      }
      return out;
    }

    Letters product(std::vector<Letters> const&     W,
                    std::vector<std::size_t> const& witness) {
      Letters out;
      for (std::size_t i : witness) {
        out.insert(out.end(), W.at(i).begin(), W.at(i).end());
      }
      return out;
    }

    // Re-checks a member verdict, with Dehn's algorithm when the
    // presentation allows it and otherwise with `e`.
    void verify_member(Verdict& v, std::vector<Letters> const& W,
                       Letters const& w, WordProblemEngine const& e,
                       Presentation const* p) {
      if (!v.member()) {
        return;
      }
      Letters     diff = multiply(product(W, v.witness), inverse(w));
      std::string name = e.name();
      bool        ok;
      if (p && p->one_relator() && small_cancellation_check(*p).c_prime_sixth) {
        ok   = DehnSolver(*p).is_trivial(diff);
        name = "Dehn algorithm";
      } else {
        ok = e.is_trivial(diff);
      }
      if (!ok) {
        throw std::logic_error("member witness failed to verify");
      }
      v.trace("witness verified by " + name);
    }

    // Prepends the steps in `pre` to v's trace.
    Verdict with_prefix(std::vector<std::string> const& pre, Verdict v) {
      v.method.insert(v.method.begin(), pre.begin(), pre.end());
      return v;
    }
  }  // namespace detail

  using detail::names_of;
  using detail::verify_member;
  using detail::with_prefix;

  ////////////////////////////////////////////////////////////////////////
  // DgInstance
  ////////////////////////////////////////////////////////////////////////

  long DgInstance::depth() const {
    long d = 0;
    for (auto const& g : generators) {
      d = std::max(d, g.j);
    }
    return d;
  }

  std::string DgInstance::to_json() const {
    using nlohmann::json;
    auto const& A = *presentation.alphabet();
    json        j;
    j["stable"]       = stable;
    j["inverted"]     = inverted;
    j["presentation"] = format_presentation(presentation);
    j["interval"]     = {interval.n, interval.m};
    json basis        = json::array();
    for (auto const& b : hnn.base.basis) {
      basis.push_back(format_omega_gen(A, b));
    }
    j["basis"]  = basis;
    json subs   = json::object();
    for (auto const& e : hnn.base.eliminated) {
      subs[format_omega_gen(A, e)]
          = hnn.base.format(A, hnn.base.expansion.at(e));
    }
    j["substitutions"] = subs;
    json pg = json::array(), qg = json::array(), phi = json::array();
    for (std::size_t k = 0; k < hnn.p_letters.size(); ++k) {
      std::string p = format_omega_gen(A, hnn.p_letters[k]);
      std::string q = format_omega_gen(A, hnn.q_letters[k]);
      pg.push_back({{"letter", p}, {"basis", hnn.base.format(A, hnn.p_gens[k])}});
      qg.push_back({{"letter", q}, {"basis", hnn.base.format(A, hnn.q_gens[k])}});
      phi.push_back({{"p", p}, {"q", q}});
    }
    j["pGens"] = pg;
    j["qGens"] = qg;
    j["phi"]   = phi;
    json gens  = json::array();
    for (auto const& g : generators) {
      gens.push_back({{"j", g.j},
                      {"u", format_omega(A, g.u)},
                      {"pre", format_omega(A, g.pre)},
                      {"source", g.source}});
    }
    j["generators"] = gens;
    if (query) {
      j["query"] = {{"j", query->j}, {"u", format_omega(A, query->u)}};
    } else {
      j["query"] = nullptr;
    }
    return j.dump(2);
  }

  std::string DgInstance::to_text() const {
    auto const&        A = *presentation.alphabet();
    std::ostringstream out;
    out << format_presentation(presentation);
    out << interval.to_text();
    out << "generators (t^j u):\n";
    for (auto const& g : generators) {
      out << "  " << stable << "^" << g.j << " . " << format_omega(A, g.u)
          << '\n';
    }
    if (query) {
      out << "query: " << stable << "^" << query->j << " . "
          << format_omega(A, query->u) << '\n';
    }
    return out.str();
  }

  DgInstance reduce_to_dg_instance(Presentation const&         p,
                                   std::string_view            t,
                                   std::vector<Letters> const& W,
                                   std::optional<Letters> const& query) {
    if (!p.one_relator()) {
      throw PreconditionError("a one-relator presentation is required");
    }
    auto const& A  = p.alphabet();
    std::size_t ti = A->index(t);
    Letters     r  = cyclic_reduce(p.relator().letters()).first;
    if (long s = exponent_sum(r, ti); s != 0) {
      throw PreconditionError("relator has " + std::string(t)
                              + "-exponent sum " + std::to_string(s));
    }
    if (!magnus_rewrite(A, r, ti).condition()) {
      throw PreconditionError("max/min condition fails for "
                              + std::string(t));
    }
    bool pos = false, neg = false;
    for (auto const& w : W) {
      long s = exponent_sum(w, ti);
      pos    = pos || s > 0;
      neg    = neg || s < 0;
    }
    if (pos && neg) {
      throw PreconditionError("generators have " + std::string(t)
                              + "-exponent sums of both signs");
    }
    DgInstance inst;
    inst.stable   = std::string(t);
    inst.inverted = neg;
    auto flip = [&](Letters const& w) {
      if (!inst.inverted) {
        return w;
      }
      Letters out = w;
      for (Letter& x : out) {
        if (gen_of(x) == ti) {
          x = -x;
        }
      }
      return out;
    };
    inst.presentation = Presentation(A, {Word(A, flip(r))});
    FiberNormalForm fnf(inst.presentation, ti);
    auto            make = [&](Letters const& w, std::size_t src) {
      auto [j, u] = fnf.normal_form(flip(w));
      return DgGenerator{j, u, fnf.shift_in_fibre(u, j), src};
    };
    for (std::size_t k = 0; k < W.size(); ++k) {
      inst.generators.push_back(make(W[k], k));
    }
    if (query) {
      inst.query = make(*query, 0);
    }
    // Smallest interval whose letters cover every subscript in use.
    auto const& rep = fnf.relator_report();
    bool        any = false;
    long        lo = 0, hi = 0;
    auto        cover = [&](OmegaWord const& u) {
      for (auto const& x : u) {
        long i = x.sub - rep.range_of(x.gen).max;
        lo     = any ? std::min(lo, i) : i;
        hi     = any ? std::max(hi, i) : i;
        any    = true;
      }
    };
    for (auto const& g : inst.generators) {
      cover(g.u);
      cover(g.pre);
    }
    if (inst.query) {
      cover(inst.query->u);
      cover(inst.query->pre);
    }
    hi            = std::max(hi, lo + 1);
    inst.interval = interval_presentation(inst.presentation, t, lo, hi);
    inst.hnn      = hnn_data(inst.interval);

    BrittonSolver britton(inst.presentation, ti);
    auto          check = [&](DgGenerator const& g, Letters const& w) {
      Letters tu = power({make_letter(ti, 1)}, g.j);
      append_reduced(tu, omega_to_letters(g.u, ti));
      if (!britton.is_trivial(multiply(tu, inverse(flip(w))))) {
        throw std::logic_error("instance generator does not match its source");
      }
    };
    for (std::size_t k = 0; k < W.size(); ++k) {
      check(inst.generators[k], W[k]);
    }
    if (inst.query) {
      check(*inst.query, *query);
    }
    return inst;
  }

  ////////////////////////////////////////////////////////////////////////
  // Surface groups
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // First generator on which all of W have exponent sums of one sign,
    // not all zero.
    std::optional<std::size_t> uniform_sign_generator(
        Presentation const& p, std::vector<Letters> const& W) {
      for (std::size_t t = 0; t < p.alphabet()->size(); ++t) {
        bool pos = false, neg = false;
        for (auto const& w : W) {
          long s = exponent_sum(w, t);
          pos    = pos || s > 0;
          neg    = neg || s < 0;
        }
        if (pos != neg) {
          return t;
        }
      }
      return std::nullopt;
    }

    std::vector<GroupHom> free_image_candidates(Presentation const& p,
                                                std::size_t g, long twists) {
      std::vector<GroupHom> out;
      GroupHom              collapse = surface_collapse(p, g, true);
      out.push_back(prefix_retraction().after(collapse));
      for (long m = 0; m <= twists; ++m) {
        out.push_back(dehn_twist_hom(2, m).after(collapse));
      }
      return out;
    }

    Verdict member_of_trivial(std::vector<std::string> const& names,
                              std::string const&              engine) {
      Verdict v;
      v.generators  = names;
      v.outcome     = Outcome::member;
      v.complete    = true;
      v.certificate = "w is trivial (empty product)";
      v.trace("word problem (" + engine + ")");
      return v;
    }
  }  // namespace

  Verdict decide_surface_submonoid(std::size_t g, bool orientable,
                                   std::vector<Letters> const& W,
                                   Letters const&              w,
                                   DeciderOptions const&       opt) {
    auto p      = surface_group(g, orientable);
    auto engine = make_engine(p);
    auto names  = names_of(*p.alphabet(), W);
    std::vector<std::string> steps;
    if (engine->is_trivial(w)) {
      return member_of_trivial(names, engine->name());
    }
    auto t = uniform_sign_generator(p, W);
    steps.push_back(t ? "uniform exponent-sum sign on "
                            + p.alphabet()->name(*t)
                      : "no generator with uniform exponent-sum sign");

    if (auto psi = positive_functional(p, W, opt.functional_box)) {
      std::string desc = "psi =";
      for (long c : *psi) {
        desc += ' ' + std::to_string(c);
      }
      steps.push_back("positive functional " + desc);
      auto v = with_prefix(steps, weighted_search(*engine, W, names, *psi, w,
                                                  opt.search, desc));
      verify_member(v, W, w, *engine, &p);
      return v;
    }
    steps.push_back("no positive functional in box "
                    + std::to_string(opt.functional_box));

    if (orientable && g >= 2) {
      auto homs = free_image_candidates(p, g, opt.max_twist);
      for (std::size_t k = 0; k < homs.size(); ++k) {
        std::string label = k == 0 ? "prefix retraction"
                                   : "retraction after Dehn twist m = "
                                         + std::to_string(k - 1);
        auto res = free_image_graded(homs[k], W);
        if (!res.certificate) {
          steps.push_back(label + ": " + res.failure);
          continue;
        }
        auto const& cert = *res.certificate;
        steps.push_back(label + ": " + to_string(cert.kind) + ", "
                        + cert.budget.to_string());
        Verdict v;
        if (cert.kind == CertificateKind::code) {
          v = guided_search(*engine, W, names, homs[k], cert, w, opt.search);
        } else {
          SearchLimits lim = opt.search;
          lim.max_factors  = reduce(homs[k].apply(w)).size();
          v = bounded_search(*engine, W, names, w, lim,
                             {true, "k factors map to reduced length >= k"});
        }
        if (!v.unknown()) {
          v = with_prefix(steps, std::move(v));
          verify_member(v, W, w, *engine, &p);
          return v;
        }
        steps.insert(steps.end(), v.method.begin(), v.method.end());
      }
    }

    std::string instance;
    if (t) {
      try {
        auto inst = reduce_to_dg_instance(p, p.alphabet()->name(*t), W, w);
        instance  = inst.to_json();
        steps.push_back("instance emitted (stable letter "
                        + p.alphabet()->name(*t) + ", depth "
                        + std::to_string(inst.depth()) + ")");
      } catch (PreconditionError const& e) {
        steps.push_back(std::string("no instance: ") + e.what());
      }
    }
    auto v     = with_prefix(steps, bounded_search(*engine, W, names, w,
                                                   opt.search));
    v.instance = instance;
    verify_member(v, W, w, *engine, &p);
    return v;
  }

  Verdict decide_surface_magnus(std::size_t g, bool orientable,
                                std::vector<Letter> const& X,
                                Letters const&             w,
                                DeciderOptions const&      opt) {
    auto        p = surface_group(g, orientable);
    auto const& A = *p.alphabet();
    std::vector<bool> pos(A.size(), false), neg(A.size(), false);
    for (Letter x : X) {
      if (x == 0 || gen_of(x) >= A.size()) {
        throw PreconditionError("letter outside the surface alphabet");
      }
      (x > 0 ? pos : neg)[gen_of(x)] = true;
    }
    bool magnus = false;
    for (std::size_t k = 0; k < A.size(); ++k) {
      magnus = magnus || !(pos[k] && neg[k]);
    }
    if (!magnus) {
      throw PreconditionError("X contains every generator and its inverse; "
                              "not a Magnus generating set");
    }
    std::vector<Letters> W;
    for (Letter x : X) {
      W.push_back({x});
    }
    auto names = names_of(A, W);

    if (!orientable) {
      bool all_pos = std::all_of(pos.begin(), pos.end(), [](bool b) { return b; });
      bool all_neg = std::all_of(neg.begin(), neg.end(), [](bool b) { return b; });
      if (all_pos || all_neg) {
        // a_i^-1 = a_i a_{i+1}^2 ... a_g^2 a_1^2 ... a_{i-1}^2
        std::size_t       n = A.size();
        int               s = all_pos ? 1 : -1;
        std::vector<std::size_t> where(n);
        for (std::size_t k = 0; k < X.size(); ++k) {
          if (sign_of(X[k]) == s) {
            where[gen_of(X[k])] = k;
          }
        }
        Verdict v;
        v.generators = names;
        for (Letter x : reduce(w)) {
          std::size_t i = gen_of(x);
          if (sign_of(x) == s) {
            v.witness.push_back(where[i]);
            continue;
          }
          std::vector<std::size_t> rep{where[i]};
          for (std::size_t d = 1; d < n; ++d) {
            std::size_t k = (i + d) % n;
            rep.push_back(where[k]);
            rep.push_back(where[k]);
          }
          if (s < 0) {
            std::reverse(rep.begin(), rep.end());
          }
          v.witness.insert(v.witness.end(), rep.begin(), rep.end());
        }
        v.outcome     = Outcome::member;
        v.complete    = true;
        v.certificate = std::string("the submonoid is the whole group: every ")
                        + (all_pos ? "inverse" : "generator")
                        + " is a product of the given letters";
        v.trace(certified("whole group"));
        auto engine = make_engine(p);
        verify_member(v, W, w, *engine, &p);
        return v;
      }
    }

    std::vector<std::string> steps;
    if (!orientable) {
      // Substitute a_j = x a_i^-1 for a positive a_i and negative a_j.
      std::optional<std::size_t> i, j;
      for (std::size_t k = 0; k < A.size(); ++k) {
        if (!i && pos[k] && !neg[k]) {
          i = k;
        }
        if (!j && neg[k] && !pos[k]) {
          j = k;
        }
      }
      if (i && j && *i != *j) {
        std::string x = "x";
        for (int k = 1; A.find(x); ++k) {
          x = "x" + std::to_string(k);
        }
        auto sub = substitute_generator(p, A.name(*j), x,
                                        x + " " + A.name(*i) + "'");
        auto rep = magnus_rewrite(sub.presentation.relator(), A.name(*i));
        steps.push_back("substitution " + A.name(*j) + " = " + x + " "
                        + A.name(*i) + "' gives "
                        + to_token_string(sub.presentation.relator()));
        steps.push_back("Magnus rewriting w.r.t. " + A.name(*i) + ": "
                        + format_omega(*sub.presentation.alphabet(), rep.word)
                        + (rep.condition() ? ", max/min PASS"
                                           : ", max/min FAIL"));
      }
    }
    return with_prefix(steps, decide_surface_submonoid(g, orientable, W, w, opt));
  }

  Verdict decide_prefix_surface(std::size_t g, bool orientable,
                                Letters const&        w,
                                DeciderOptions const& opt) {
    if (g < 2) {
      throw PreconditionError("prefix decider needs genus at least 2");
    }
    auto p      = surface_group(g, orientable);
    auto W      = prefix_generators(p, g, orientable);
    auto names  = names_of(*p.alphabet(), W);
    auto engine = make_engine(p);
    if (engine->is_trivial(w)) {
      return member_of_trivial(names, engine->name());
    }
    GroupHom collapse = surface_collapse(p, g, orientable);
    Verdict  v;
    if (orientable) {
      GroupHom f   = prefix_retraction().after(collapse);
      auto     res = free_image_graded(f, W);
      if (!res.certificate || res.certificate->kind != CertificateKind::code) {
        throw std::logic_error("prefix images failed the code test: "
                               + res.failure);
      }
      v = guided_search(*engine, W, names, f, *res.certificate, w, opt.search);
      v.method.insert(v.method.begin(),
                      "prefix monoid image under rho is free on "
                          + std::to_string(res.certificate->basis.size())
                          + " words; " + res.certificate->budget.to_string());
    } else {
      // sigma: c -> 1, d -> -1 on N_2, composed with the collapse.
      std::vector<long> psi(p.alphabet()->size(), 0);
      for (std::size_t k = 0; k < psi.size(); ++k) {
        Letters im = collapse.image(k);
        psi[k]     = im.empty() ? 0 : (gen_of(im.front()) == 0 ? 1 : -1);
      }
      DistortionBudget lambda = compose_budget(
          {1, 0, "Mon<x> in Z", BudgetSemantics::upper_distortion},
          GroupHom(make_alphabet({"c", "d"}), make_alphabet({"x"}),
                   {{1}, {-1}})
              .after(collapse),
          W);
      v = weighted_search(*engine, W, names, psi, w, opt.search,
                          "sigma: c -> x, d -> x^-1");
      v.method.insert(v.method.begin(), lambda.to_string());
    }
    verify_member(v, W, w, *engine, &p);
    return v;
  }

  SignChoice choose_signs(Presentation const& p, std::vector<Letters> const& X) {
    SignChoice out;
    out.signs.assign(X.size(), 1);
    for (std::size_t t = 0; t < p.alphabet()->size(); ++t) {
      bool nonzero = false;
      for (auto const& x : X) {
        nonzero = nonzero || exponent_sum(x, t) != 0;
      }
      if (!nonzero) {
        continue;
      }
      out.stable = t;
      for (std::size_t k = 0; k < X.size(); ++k) {
        out.signs[k] = exponent_sum(X[k], t) < 0 ? -1 : 1;
      }
      return out;
    }
    return out;
  }

  Verdict powers_decider(std::size_t g, std::vector<Letters> const& P,
                         Letters const& w, DeciderOptions const& opt) {
    auto        p = orientable_surface(g);
    auto const& A = *p.alphabet();
    // exponents per generator
    std::vector<std::vector<long>> ks(A.size());
    for (auto const& u : P) {
      Letters r = reduce(u);
      if (r.empty() || std::any_of(r.begin(), r.end(), [&](Letter x) {
            return gen_of(x) != gen_of(r.front());
          })) {
        throw PreconditionError("'" + format_letters(A, u)
                                + "' is not a power of a generator");
      }
      ks[gen_of(r.front())].push_back(exponent_sum(r, gen_of(r.front())));
    }
    bool uniform = false;
    for (auto const& k : ks) {
      bool pos = std::any_of(k.begin(), k.end(), [](long e) { return e > 0; });
      bool neg = std::any_of(k.begin(), k.end(), [](long e) { return e < 0; });
      uniform  = uniform || (pos != neg);
    }
    if (uniform || P.empty()) {
      return with_prefix({"powers: some generator has one-signed exponents"},
                         decide_surface_submonoid(g, true, P, w, opt));
    }
    // Every generator occurs with both signs: Mon<P> is the subgroup
    // generated by s^gcd for each s.
    Verdict v;
    v.generators = names_of(A, P);
    std::vector<std::string> sub;
    std::vector<long>        d(A.size(), 0);
    for (std::size_t s = 0; s < A.size(); ++s) {
      for (long e : ks[s]) {
        d[s] = std::gcd(d[s], std::labs(e));
      }
      if (d[s] != 0) {
        sub.push_back(A.name(s) + "^" + std::to_string(d[s]));
      }
    }
    std::string gens;
    for (auto const& s : sub) {
      gens += (gens.empty() ? "" : ", ") + s;
    }
    v.trace("powers: every generator occurs with both signs");
    v.instance = "subgroup membership in <" + gens + "> of "
                 + format_presentation(p);
    Letters r = reduce(w);
    if (!r.empty() && std::all_of(r.begin(), r.end(), [&](Letter x) {
          return gen_of(x) == gen_of(r.front());
        })) {
      std::size_t s = gen_of(r.front());
      long        k = exponent_sum(r, s);
      if (d[s] != 0 && k % d[s] == 0) {
        // s^k from the positive and negative powers: find a, b >= 0 with
        // a*p - b*q = k for one positive p and one negative -q in P.
        long pp = 0, qq = 0;
        std::size_t ip = 0, iq = 0;
        for (std::size_t i = 0; i < P.size(); ++i) {
          Letters u = reduce(P[i]);
          if (gen_of(u.front()) != s) {
            continue;
          }
          long e = exponent_sum(u, s);
          // gcd of the chosen pair must be d[s]; take the pair with it
          for (std::size_t j = 0; j < P.size(); ++j) {
            Letters v2 = reduce(P[j]);
            if (gen_of(v2.front()) != s) {
              continue;
            }
            long f = exponent_sum(v2, s);
            if (e > 0 && f < 0 && std::gcd(e, -f) == d[s] && pp == 0) {
              pp = e, qq = -f, ip = i, iq = j;
            }
          }
        }
        if (pp != 0) {
          // a*pp - b*qq = k with a, b >= 0
          for (long a = 0; a <= qq + std::labs(k); ++a) {
            long rest = a * pp - k;
            if (rest >= 0 && rest % qq == 0) {
              long b = rest / qq;
              v.witness.assign(static_cast<std::size_t>(a), ip);
              v.witness.insert(v.witness.end(), static_cast<std::size_t>(b), iq);
              v.outcome     = Outcome::member;
              v.complete    = true;
              v.certificate = "w is a power of " + A.name(s)
                              + " divisible by " + std::to_string(d[s]);
              v.trace(certified("power of a single generator"));
              auto engine = make_engine(p);
              verify_member(v, P, w, *engine, &p);
              return v;
            }
          }
        }
      }
    }
    v.certificate = "subgroup membership is left to an external decider";
    v.trace("instance emitted: " + v.instance);
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Gadgets
  ////////////////////////////////////////////////////////////////////////

  std::string GadgetOutput::to_json() const {
    nlohmann::json j;
    j["presentation"]   = format_presentation(presentation);
    j["generatingSet"]  = generating_set;
    j["stable"]         = stable;
    j["note"]           = note;
    return j.dump(2);
  }

  GadgetOutput emit_positivity_gadget(Presentation const&         p,
                                      std::vector<Letters> const& X) {
    auto const& A     = *p.alphabet();
    auto        names = A.names();
    auto        fresh = [&](std::string base) {
      std::string n = base;
      for (int k = 1; std::find(names.begin(), names.end(), n) != names.end();
           ++k) {
        n = base + std::to_string(k);
      }
      names.push_back(n);
      return n;
    };
    GadgetOutput out;
    out.stable = fresh("t");
    std::vector<std::string> conj;
    for (std::size_t k = 0; k < X.size(); ++k) {
      conj.push_back(fresh("s" + std::to_string(k + 1)));
    }
    auto B = make_alphabet(names);
    std::vector<Word> rels;
    for (auto const& r : p.relators()) {
      rels.emplace_back(B, r.letters());
    }
    Letter t = make_letter(A.size(), 1);
    for (std::size_t k = 0; k < X.size(); ++k) {
      // s_k = t x_k t^-1
      Letters r{t};
      r.insert(r.end(), X[k].begin(), X[k].end());
      r.push_back(-t);
      r.push_back(-make_letter(A.size() + 1 + k, 1));
      rels.emplace_back(B, reduce(r));
    }
    out.presentation   = Presentation(B, std::move(rels));
    out.generating_set = A.names();
    out.generating_set.push_back(out.stable);
    out.generating_set.insert(out.generating_set.end(), conj.begin(), conj.end());
    out.note = "G * Z with Z = <" + out.stable + ">; for g in G, "
               + out.stable + " g " + out.stable
               + "^-1 lies in Mon<A> exactly when g lies in Mon<X>";
    return out;
  }

}  // namespace submon
