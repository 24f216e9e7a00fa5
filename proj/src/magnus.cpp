#include "submon/magnus.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace submon {

  ////////////////////////////////////////////////////////////////////////
  // Omega words
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool cancels(OmegaLetter const& x, OmegaLetter const& y) {
      return x.gen == y.gen && x.sub == y.sub && x.sign == -y.sign;
    }

    void omega_append(OmegaWord& u, OmegaWord const& v) {
      for (auto const& x : v) {
        if (!u.empty() && cancels(u.back(), x)) {
          u.pop_back();
        } else {
          u.push_back(x);
        }
      }
    }
  }  // namespace

  OmegaWord omega_reduce(OmegaWord const& w) {
    OmegaWord out;
    omega_append(out, w);
    return out;
  }

  OmegaWord omega_inverse(OmegaWord const& w) {
    OmegaWord out(w.rbegin(), w.rend());
    for (auto& x : out) {
      x.sign = -x.sign;
    }
    return out;
  }

  OmegaWord omega_multiply(OmegaWord const& u, OmegaWord const& v) {
    OmegaWord out = u;
    omega_append(out, v);
    return out;
  }

  OmegaWord shift(OmegaWord const& w, long i) {
    OmegaWord out = w;
    for (auto& x : out) {
      x.sub += i;
    }
    return out;
  }

  std::string format_omega_gen(Alphabet const& alphabet, OmegaGen const& g) {
    return alphabet.name(g.first) + "[" + std::to_string(g.second) + "]";
  }

  std::string format_omega(Alphabet const& alphabet, OmegaWord const& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += ' ';
      }
      out += format_omega_gen(alphabet, {w[i].gen, w[i].sub});
      if (w[i].sign < 0) {
        out += '\'';
      }
    }
    return out.empty() ? "1" : out;
  }

  OmegaWord parse_omega(Alphabet const& alphabet, std::string const& text) {
    OmegaWord          out;
    std::istringstream in(text);
    std::string        tok;
    std::size_t        offset = 0;
    while (in >> tok) {
      if (tok == "1") {
        continue;
      }
      auto open  = tok.find('[');
      auto close = tok.find(']');
      if (open == std::string::npos || close == std::string::npos
          || close < open) {
        throw ParseError("expected name[index] in '" + tok + "'", offset);
      }
      auto gen = alphabet.find(tok.substr(0, open));
      if (!gen) {
        throw ParseError("unknown generator in '" + tok + "'", offset);
      }
      long sub;
      try {
        sub = std::stol(tok.substr(open + 1, close - open - 1));
      } catch (std::exception const&) {
        throw ParseError("bad index in '" + tok + "'", offset);
      }
      int sign = 1;
      for (std::size_t k = close + 1; k < tok.size(); ++k) {
        if (tok[k] != '\'') {
          throw ParseError("trailing junk in '" + tok + "'", offset);
        }
        sign = -sign;
      }
      out.push_back({*gen, sub, sign});
      offset += tok.size() + 1;
    }
    return out;
  }

  Letters omega_to_letters(OmegaWord const& w, std::size_t stable) {
    Letters out;
    for (auto const& x : w) {
      Letter t = make_letter(stable, x.sub >= 0 ? 1 : -1);
      for (long k = 0; k < std::labs(x.sub); ++k) {
        out.push_back(t);
      }
      out.push_back(make_letter(x.gen, x.sign));
      for (long k = 0; k < std::labs(x.sub); ++k) {
        out.push_back(-t);
      }
    }
    return reduce(out);
  }

  ////////////////////////////////////////////////////////////////////////
  // Magnus rewriting
  ////////////////////////////////////////////////////////////////////////

  GeneratorRange const& MagnusReport::range_of(std::size_t gen) const {
    for (auto const& r : ranges) {
      if (r.gen == gen) {
        return r;
      }
    }
    throw PreconditionError("generator does not occur in the rewritten "
                            "word");
  }

  std::string MagnusReport::to_text() const {
    std::ostringstream out;
    out << "rewritten: " << format_omega(*alphabet, word) << '\n';
    for (auto const& r : ranges) {
      out << alphabet->name(r.gen) << ": subscripts [" << r.min << ", "
          << r.max << "], occurrences at min " << r.count_at_min
          << ", at max " << r.count_at_max << '\n';
    }
    if (chosen) {
      out << "max/min PASS (" << alphabet->name(*chosen) << ")\n";
    } else {
      out << "max/min FAIL\n";
    }
    return out.str();
  }

  MagnusReport magnus_rewrite(AlphabetPtr const& alphabet, Letters const& w,
                              std::size_t t) {
    if (t >= alphabet->size()) {
      throw PreconditionError("stable letter out of range");
    }
    if (exponent_sum(w, t) != 0) {
      throw PreconditionError("Magnus rewriting needs t-exponent sum 0 (got "
                              + std::to_string(exponent_sum(w, t)) + ")");
    }
    MagnusReport rep;
    rep.alphabet = alphabet;
    rep.stable   = t;
    long s       = 0;
    for (Letter x : w) {
      if (gen_of(x) == t) {
        s += sign_of(x);
      } else {
        rep.word.push_back({gen_of(x), s, sign_of(x)});
      }
    }
    for (std::size_t g = 0; g < alphabet->size(); ++g) {
      if (g == t) {
        continue;
      }
      bool           seen = false;
      GeneratorRange r{g, 0, 0, 0, 0};
      for (auto const& x : rep.word) {
        if (x.gen != g) {
          continue;
        }
        if (!seen) {
          r.min = r.max = x.sub;
          seen          = true;
        }
        r.min = std::min(r.min, x.sub);
        r.max = std::max(r.max, x.sub);
      }
      if (!seen) {
        continue;
      }
      for (auto const& x : rep.word) {
        if (x.gen == g) {
          r.count_at_min += x.sub == r.min;
          r.count_at_max += x.sub == r.max;
        }
      }
      rep.ranges.push_back(r);
      if (!rep.chosen && r.unique_min() && r.unique_max()) {
        rep.chosen = g;
      }
    }
    return rep;
  }

  MagnusReport magnus_rewrite(Word const& w, std::string_view t) {
    return magnus_rewrite(w.alphabet(), w.letters(), w.alphabet()->index(t));
  }

  ////////////////////////////////////////////////////////////////////////
  // Interval presentations
  ////////////////////////////////////////////////////////////////////////

  std::vector<OmegaGen> interval_letters(OmegaWord const& relator, long n,
                                         long m) {
    std::set<OmegaGen> out;
    for (long i = n; i <= m; ++i) {
      for (auto const& x : relator) {
        out.insert({x.gen, x.sub + i});
      }
    }
    return {out.begin(), out.end()};
  }

  bool IntervalPresentation::contains(OmegaGen const& g) const {
    return std::binary_search(generators.begin(), generators.end(), g);
  }

  std::string IntervalPresentation::to_text() const {
    std::ostringstream out;
    out << "L[" << n << "," << m << "] = <";
    for (auto const& g : generators) {
      out << ' ' << format_omega_gen(*alphabet, g);
    }
    out << ' ' << alphabet->name(stable) << " |\n";
    for (auto const& r : relators) {
      out << "  " << format_omega(*alphabet, r) << " = 1\n";
    }
    std::string t = alphabet->name(stable);
    for (auto const& g : conjugations) {
      out << "  " << t << ' ' << format_omega_gen(*alphabet, g) << ' ' << t
          << "' = " << format_omega_gen(*alphabet, {g.first, g.second + 1})
          << '\n';
    }
    out << ">\n";
    return out.str();
  }

  namespace {
    // Cyclically reduced relator of a one-relator presentation.
    Letters prepared_relator(Presentation const& p) {
      Letters r = cyclic_reduce(p.relator().letters()).first;
      if (r.empty()) {
        throw PreconditionError("relator is trivial in the free group");
      }
      return r;
    }
  }  // namespace

  IntervalPresentation interval_presentation(Presentation const& p,
                                             std::string_view t, long n,
                                             long m) {
    if (n >= m) {
      throw PreconditionError("interval presentation needs n < m");
    }
    IntervalPresentation ip;
    ip.alphabet  = p.alphabet();
    ip.stable    = p.alphabet()->index(t);
    ip.n         = n;
    ip.m         = m;
    ip.rewritten = magnus_rewrite(ip.alphabet, prepared_relator(p), ip.stable);
    ip.generators = interval_letters(ip.rewritten.word, n, m);
    for (long i = n; i <= m; ++i) {
      ip.relators.push_back(shift(ip.rewritten.word, i));
    }
    for (auto const& g : ip.generators) {
      if (ip.contains({g.first, g.second + 1})) {
        ip.conjugations.push_back(g);
      }
    }
    return ip;
  }

  ////////////////////////////////////////////////////////////////////////
  // Elimination
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Solve relator = U x^e V for the single occurrence of x.
    OmegaWord solve_for(OmegaWord const& rel, OmegaGen const& x) {
      auto it = std::find_if(rel.begin(), rel.end(), [&](OmegaLetter const& y) {
        return y.gen == x.first && y.sub == x.second;
      });
      if (it == rel.end()) {
        throw PreconditionError("letter to eliminate does not occur");
      }
      OmegaWord u(rel.begin(), it), v(it + 1, rel.end());
      OmegaWord val = omega_multiply(omega_inverse(u), omega_inverse(v));
      return it->sign > 0 ? val : omega_inverse(val);
    }
  }  // namespace

  std::optional<std::size_t> FreeBasis::basis_index(OmegaGen const& g) const {
    auto it = std::lower_bound(basis.begin(), basis.end(), g);
    if (it == basis.end() || *it != g) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - basis.begin());
  }

  Letters FreeBasis::expand(OmegaWord const& w) const {
    Letters out;
    for (auto const& x : w) {
      auto it = expansion.find({x.gen, x.sub});
      if (it == expansion.end()) {
        throw PreconditionError("letter outside the interval generators");
      }
      append_reduced(out, x.sign > 0 ? it->second : inverse(it->second));
    }
    return out;
  }

  std::string FreeBasis::format(Alphabet const& alphabet,
                                Letters const&  w) const {
    OmegaWord ow;
    for (Letter x : w) {
      auto const& g = basis.at(gen_of(x));
      ow.push_back({g.first, g.second, sign_of(x)});
    }
    return format_omega(alphabet, ow);
  }

  FreeBasis eliminate_to_basis(IntervalPresentation const& ip) {
    if (!ip.rewritten.condition()) {
      throw PreconditionError("max/min condition fails; the interval "
                              "presentation need not be free");
    }
    FreeBasis fb;
    fb.chosen       = *ip.rewritten.chosen;
    long const top  = ip.rewritten.range_of(fb.chosen).max;
    std::set<OmegaGen> gone;
    for (long i = ip.n; i <= ip.m; ++i) {
      gone.insert({fb.chosen, top + i});
    }
    for (auto const& g : ip.generators) {
      if (gone.count(g)) {
        fb.eliminated.push_back(g);
      } else {
        fb.basis.push_back(g);
      }
    }
    for (std::size_t k = 0; k < fb.basis.size(); ++k) {
      fb.expansion[fb.basis[k]] = {make_letter(k, 1)};
    }
    // Lowest first, so every eliminated letter a relator mentions has
    // already been expanded.
    for (long i = ip.n; i <= ip.m; ++i) {
      OmegaGen  x   = {fb.chosen, top + i};
      OmegaWord val = solve_for(ip.relators[static_cast<std::size_t>(i - ip.n)], x);
      fb.expansion[x] = fb.expand(val);
    }
    return fb;
  }

  std::optional<Letters> HnnData::phi(Letters const& p) const {
    auto w = p_graph->contains(p);
    if (!w) {
      return std::nullopt;
    }
    return evaluate_witness(q_gens, *w);
  }

  std::optional<Letters> HnnData::phi_inverse(Letters const& q) const {
    auto w = q_graph->contains(q);
    if (!w) {
      return std::nullopt;
    }
    return evaluate_witness(p_gens, *w);
  }

  HnnData hnn_data(IntervalPresentation const& ip) {
    HnnData h;
    h.ip        = ip;
    h.base      = eliminate_to_basis(ip);
    h.p_letters = interval_letters(ip.rewritten.word, ip.n, ip.m - 1);
    h.q_letters = interval_letters(ip.rewritten.word, ip.n + 1, ip.m);
    if (h.p_letters.size() != h.q_letters.size()) {
      throw PreconditionError("associated subgroups have different rank");
    }
    for (std::size_t k = 0; k < h.p_letters.size(); ++k) {
      h.p_gens.push_back(h.base.expansion.at(h.p_letters[k]));
      h.q_gens.push_back(h.base.expansion.at(h.q_letters[k]));
    }
    std::size_t rank = std::max<std::size_t>(h.base.basis.size(), 1);
    h.p_graph = std::make_shared<StallingsGraph const>(rank, h.p_gens);
    h.q_graph = std::make_shared<StallingsGraph const>(rank, h.q_gens);
    return h;
  }

  ////////////////////////////////////////////////////////////////////////
  // Britton reduction
  ////////////////////////////////////////////////////////////////////////

  BrittonSolver::BrittonSolver(Presentation const& p, std::string_view t) {
    init(p, p.alphabet()->index(t));
  }

  BrittonSolver::BrittonSolver(Presentation const& p, std::size_t t) {
    init(p, t);
  }

  void BrittonSolver::init(Presentation const& p, std::size_t t) {
    _stable   = t;
    _alphabet = p.alphabet();
    Letters r = prepared_relator(p);
    auto    rep = magnus_rewrite(_alphabet, r, t);
    if (!rep.condition()) {
      throw PreconditionError("max/min condition fails for stable letter "
                              + _alphabet->name(t));
    }
    long k = 0;
    for (auto const& x : rep.word) {
      k = std::max(k, std::labs(x.sub));
    }
    for (std::size_t g = 0; g < _alphabet->size(); ++g) {
      if (g != t && exponent_sum(r, g) == 0
          && std::none_of(r.begin(), r.end(),
                          [g](Letter x) { return gen_of(x) == g; })) {
        throw PreconditionError("generator " + _alphabet->name(g)
                                + " does not occur in the relator");
      }
    }
    long n = -k, m = std::max(k, n + 1);
    auto ip = interval_presentation(p, _alphabet->name(t), n, m);
    _data   = hnn_data(ip);
    _letter_image.assign(_alphabet->size(), Letters());
    for (std::size_t g = 0; g < _alphabet->size(); ++g) {
      if (g != t) {
        _letter_image[g] = _data.base.expansion.at({g, 0});
      }
    }
  }

  BrittonSolver::Reduced BrittonSolver::reduce(Letters const& w) const {
    Reduced out;
    out.segments.emplace_back();
    for (Letter x : w) {
      if (gen_of(x) != _stable) {
        auto const& im = _letter_image.at(gen_of(x));
        append_reduced(out.segments.back(), x > 0 ? im : inverse(im));
        continue;
      }
      int e = sign_of(x);
      if (!out.stable.empty() && out.stable.back() == -e) {
        // t h t^-1 with h in P, or t^-1 h t with h in Q.
        Letters const&         h   = out.segments.back();
        std::optional<Letters> img = out.stable.back() > 0
                                         ? _data.phi(h)
                                         : _data.phi_inverse(h);
        if (img) {
          out.stable.pop_back();
          out.segments.pop_back();
          append_reduced(out.segments.back(), *img);
          continue;
        }
      }
      out.stable.push_back(e);
      out.segments.emplace_back();
    }
    return out;
  }

  bool BrittonSolver::is_trivial(Letters const& w) const {
    if (exponent_sum(w, _stable) != 0) {
      return false;
    }
    auto r = reduce(w);
    return r.stable.empty() && r.segments.front().empty();
  }

  bool britton_word_problem(Presentation const& p, std::string_view t,
                            Word const& w) {
    if (!same_alphabet(p.alphabet(), w.alphabet())) {
      throw PreconditionError("word and presentation alphabets differ");
    }
    return BrittonSolver(p, t).is_trivial(w.letters());
  }

  ////////////////////////////////////////////////////////////////////////
  // Fibre normal forms
  ////////////////////////////////////////////////////////////////////////

  FiberNormalForm::FiberNormalForm(Presentation const& p, std::string_view t) {
    init(p, p.alphabet()->index(t));
  }

  FiberNormalForm::FiberNormalForm(Presentation const& p, std::size_t t) {
    init(p, t);
  }

  void FiberNormalForm::init(Presentation const& p, std::size_t t) {
    _alphabet = p.alphabet();
    _stable   = t;
    _report   = magnus_rewrite(_alphabet, prepared_relator(p), t);
    if (!_report.condition()) {
      throw PreconditionError("max/min condition fails for stable letter "
                              + _alphabet->name(t));
    }
    _chosen    = *_report.chosen;
    auto const& r = _report.range_of(_chosen);
    _min = r.min;
    _max = r.max;
    _lo  = _min;
    _hi  = _max - 1;
  }

  OmegaWord const& FiberNormalForm::expansion(long k) const {
    {
      std::lock_guard<std::mutex> lock(_mutex);
      auto it = _cache.find(k);
      if (it != _cache.end()) {
        return it->second;
      }
    }
    // Fill in every level between the basis range and k, nearest first,
    // so each step only needs letters that are already expanded.
    long const step  = k > _hi ? 1 : -1;
    long const start = k > _hi ? _max : _min - 1;
    for (long j = start;; j += step) {
      bool have;
      {
        std::lock_guard<std::mutex> lock(_mutex);
        have = _cache.count(j) > 0;
      }
      if (!have) {
        long      i   = k > _hi ? j - _max : j - _min;
        OmegaWord val = solve_for(shift(_report.word, i), {_chosen, j});
        OmegaWord out;
        for (auto const& x : val) {
          if (x.gen == _chosen && (x.sub < _lo || x.sub > _hi)) {
            OmegaWord e;
            {
              std::lock_guard<std::mutex> lock(_mutex);
              e = _cache.at(x.sub);
            }
            omega_append(out, x.sign > 0 ? e : omega_inverse(e));
          } else {
            omega_append(out, {x});
          }
        }
        std::lock_guard<std::mutex> lock(_mutex);
        _cache.emplace(j, std::move(out));
      }
      if (j == k) {
        break;
      }
    }
    std::lock_guard<std::mutex> lock(_mutex);
    return _cache.at(k);
  }

  OmegaWord FiberNormalForm::to_basis(OmegaWord const& w) const {
    OmegaWord out;
    for (auto const& x : w) {
      if (x.gen == _stable) {
        throw PreconditionError("stable letter inside an omega word");
      }
      if (x.gen == _chosen && (x.sub < _lo || x.sub > _hi)) {
        OmegaWord const& e = expansion(x.sub);
        omega_append(out, x.sign > 0 ? e : omega_inverse(e));
      } else {
        omega_append(out, {x});
      }
    }
    return out;
  }

  OmegaWord FiberNormalForm::shift_in_fibre(OmegaWord const& u, long k) const {
    return to_basis(shift(u, k));
  }

  std::pair<long, OmegaWord> FiberNormalForm::normal_form(
      Letters const& w) const {
    long      j = exponent_sum(w, _stable);
    long      s = -j;  // we rewrite t^-j w
    OmegaWord raw;
    for (Letter x : w) {
      if (x == 0 || gen_of(x) >= _alphabet->size()) {
        throw PreconditionError("letter outside the presentation");
      }
      if (gen_of(x) == _stable) {
        s += sign_of(x);
      } else {
        raw.push_back({gen_of(x), s, sign_of(x)});
      }
    }
    return {j, to_basis(raw)};
  }

  std::string FiberNormalForm::key(Letters const& w) const {
    auto [j, u] = normal_form(w);
    std::string out = std::to_string(j) + '|';
    for (auto const& x : u) {
      out += std::to_string(x.gen);
      out += x.sign > 0 ? '+' : '-';
      out += std::to_string(x.sub);
      out += ',';
    }
    return out;
  }

  bool FiberNormalForm::is_trivial(Letters const& w) const {
    auto [j, u] = normal_form(w);
    return j == 0 && u.empty();
  }

  std::pair<long, OmegaWord> fbc_normal_form(Presentation const& p,
                                             std::string_view t,
                                             Word const&      w) {
    if (!same_alphabet(p.alphabet(), w.alphabet())) {
      throw PreconditionError("word and presentation alphabets differ");
    }
    return FiberNormalForm(p, t).normal_form(w.letters());
  }

  ////////////////////////////////////////////////////////////////////////
  // Substitutions
  ////////////////////////////////////////////////////////////////////////

  Substitution substitute_generator(Presentation const& p,
                                    std::string_view    old,
                                    std::string_view    fresh,
                                    std::string_view    expr) {
    auto const& A     = *p.alphabet();
    std::size_t o     = A.index(old);
    auto        names = A.names();
    if (fresh != old && A.find(fresh)) {
      throw PreconditionError("fresh generator name '" + std::string(fresh)
                              + "' is already in use");
    }
    names[o]   = std::string(fresh);
    auto B     = make_alphabet(names);
    Letters e  = parse_letters(*B, expr);
    auto count = std::count_if(e.begin(), e.end(),
                               [o](Letter x) { return gen_of(x) == o; });
    if (count != 1) {
      throw PreconditionError("the fresh generator must occur exactly once "
                              "in the substituted expression");
    }
    std::vector<Letters> fwd, bwd;
    for (std::size_t g = 0; g < A.size(); ++g) {
      fwd.push_back(g == o ? e : Letters{make_letter(g, 1)});
    }
    // e = U f^s V  =>  f = (U^-1 old V^-1)^s, all other letters fixed.
    auto    it = std::find_if(e.begin(), e.end(),
                           [o](Letter x) { return gen_of(x) == o; });
    Letters u(e.begin(), it), v(it + 1, e.end());
    Letters f = inverse(u);
    f.push_back(make_letter(o, 1));
    f = multiply(f, inverse(v));
    if (*it < 0) {
      f = inverse(f);
    }
    for (std::size_t g = 0; g < A.size(); ++g) {
      bwd.push_back(g == o ? f : Letters{make_letter(g, 1)});
    }
    GroupHom          forward(p.alphabet(), B, fwd);
    GroupHom          backward(B, p.alphabet(), bwd);
    std::vector<Word> rels;
    for (auto const& r : p.relators()) {
      Letters w = cyclic_reduce(forward.apply(r.letters())).first;
      if (w.empty()) {
        throw PreconditionError("a relator became trivial after "
                                "substitution");
      }
      rels.emplace_back(B, std::move(w));
    }
    return {Presentation(B, std::move(rels)), std::move(forward),
            std::move(backward)};
  }

}  // namespace submon
