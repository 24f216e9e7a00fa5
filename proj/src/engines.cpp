#include "submon/engines.hpp"

#include <cstdlib>

#include "submon/errors.hpp"

namespace submon {

  bool WordProblemEngine::equal(Letters const& u, Letters const& v) const {
    return is_trivial(multiply(u, inverse(v)));
  }

  std::optional<std::string> FreeEngine::key(Letters const& w) const {
    std::string out;
    for (Letter x : reduce(w)) {
      out += std::to_string(x);
      out += ',';
    }
    return out;
  }

  BrittonEngine::BrittonEngine(Presentation const& p, std::size_t t)
      : _stable_name(p.alphabet()->name(t)), _britton(p, t), _fibre(p, t) {}

  std::string BrittonEngine::name() const {
    return "Britton reduction (stable letter " + _stable_name + ")";
  }

  ////////////////////////////////////////////////////////////////////////
  // Baumslag-Solitar
  ////////////////////////////////////////////////////////////////////////

  BsEngine::BsEngine(long m, long n) : _m(m), _n(n) {
    if (m == 0 || n == 0) {
      throw PreconditionError("BS(m,n) needs m and n nonzero");
    }
  }

  std::string BsEngine::name() const {
    return "Britton reduction in BS(" + std::to_string(_m) + ","
           + std::to_string(_n) + ")";
  }

  BsEngine::NormalForm BsEngine::normal_form(Letters const& w) const {
    NormalForm nf;
    nf.powers.push_back(0);
    for (Letter x : w) {
      if (gen_of(x) == 0) {
        nf.powers.back() += sign_of(x);
        continue;
      }
      if (gen_of(x) != 1) {
        throw PreconditionError("BS words use the generators a and t only");
      }
      int e = sign_of(x);
      if (!nf.stable.empty() && nf.stable.back() == -e) {
        long k = nf.powers.back();
        // t a^k t^-1 with m | k, or t^-1 a^k t with n | k.
        long div = nf.stable.back() > 0 ? _m : _n;
        long mul = nf.stable.back() > 0 ? _n : _m;
        if (k % div == 0) {
          nf.stable.pop_back();
          nf.powers.pop_back();
          nf.powers.back() += k / div * mul;
          continue;
        }
      }
      nf.stable.push_back(e);
      nf.powers.push_back(0);
    }
    // Push powers rightwards: a^(nq) t = t a^(mq), a^(mq) t^-1 = t^-1 a^(nq).
    for (std::size_t i = 0; i < nf.stable.size(); ++i) {
      long div = nf.stable[i] > 0 ? _n : _m;
      long mul = nf.stable[i] > 0 ? _m : _n;
      long ad  = std::labs(div);
      long r   = ((nf.powers[i] % ad) + ad) % ad;
      long q   = (nf.powers[i] - r) / div;
      nf.powers[i] = r;
      nf.powers[i + 1] += q * mul;
    }
    return nf;
  }

  Letters BsEngine::to_letters(NormalForm const& nf) const {
    Letters out;
    for (std::size_t i = 0; i < nf.powers.size(); ++i) {
      Letter a = nf.powers[i] >= 0 ? 1 : -1;
      for (long k = 0; k < std::labs(nf.powers[i]); ++k) {
        out.push_back(a);
      }
      if (i < nf.stable.size()) {
        out.push_back(nf.stable[i] > 0 ? 2 : -2);
      }
    }
    return out;
  }

  bool BsEngine::is_trivial(Letters const& w) const {
    auto nf = normal_form(w);
    return nf.stable.empty() && nf.powers.front() == 0;
  }

  std::optional<std::string> BsEngine::key(Letters const& w) const {
    auto        nf = normal_form(w);
    std::string out;
    for (std::size_t i = 0; i < nf.powers.size(); ++i) {
      out += std::to_string(nf.powers[i]);
      if (i < nf.stable.size()) {
        out += nf.stable[i] > 0 ? 't' : 'T';
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Engine selection
  ////////////////////////////////////////////////////////////////////////

  std::optional<std::size_t> magnus_stable_letter(Presentation const& p) {
    if (!p.one_relator()) {
      return std::nullopt;
    }
    Letters r = cyclic_reduce(p.relator().letters()).first;
    if (r.empty()) {
      return std::nullopt;
    }
    for (std::size_t t = 0; t < p.alphabet()->size(); ++t) {
      if (exponent_sum(r, t) != 0) {
        continue;
      }
      bool occurs = false;
      for (Letter x : r) {
        occurs = occurs || gen_of(x) == t;
      }
      if (!occurs) {
        continue;
      }
      if (magnus_rewrite(p.alphabet(), r, t).condition()) {
        return t;
      }
    }
    return std::nullopt;
  }

  namespace {
    std::string fresh_name(Alphabet const& A) {
      for (std::size_t k = 0;; ++k) {
        std::string name = k == 0 ? "y" : "y" + std::to_string(k);
        if (!A.find(name)) {
          return name;
        }
      }
    }

    // All non-stable generators must occur in the relator for Britton.
    bool every_generator_occurs(Presentation const& p) {
      std::vector<bool> seen(p.alphabet()->size(), false);
      for (Letter x : p.relator().letters()) {
        seen[gen_of(x)] = true;
      }
      for (bool b : seen) {
        if (!b) {
          return false;
        }
      }
      return true;
    }
  }  // namespace

  std::optional<std::pair<long, long>> bs_shape(Presentation const& p) {
    if (p.alphabet()->size() != 2 || !p.one_relator()) {
      return std::nullopt;
    }
    Letters const& r = p.relator().letters();
    // t a^m t^-1 a^k
    if (r.size() < 4 || r.front() != 2) {
      return std::nullopt;
    }
    std::size_t i = 1;
    // exponent of a pure power of a starting at i, 0 if there is none
    auto run = [&]() {
      long e = 0;
      for (; i < r.size() && gen_of(r[i]) == 0; ++i) {
        if (e != 0 && (r[i] > 0) != (e > 0)) {
          return 0L;
        }
        e += r[i] > 0 ? 1 : -1;
      }
      return e;
    };
    long m = run();
    if (m == 0 || i >= r.size() || r[i] != -2) {
      return std::nullopt;
    }
    ++i;
    long k = run();
    if (k == 0 || i != r.size()) {
      return std::nullopt;
    }
    return std::make_pair(m, -k);
  }

  EnginePtr make_engine(Presentation const& p) {
    if (p.relators().empty()) {
      return std::make_shared<FreeEngine const>();
    }
    if (auto bs = bs_shape(p)) {
      return std::make_shared<BsEngine const>(bs->first, bs->second);
    }
    if (p.one_relator() && every_generator_occurs(p)) {
      if (auto t = magnus_stable_letter(p)) {
        return std::make_shared<BrittonEngine const>(p, *t);
      }
      auto const& A = *p.alphabet();
      if (A.size() >= 2) {
        std::string first = A.name(0), last = A.name(A.size() - 1);
        std::string y     = fresh_name(A);
        try {
          auto sub = substitute_generator(p, last, y, first + "' " + y);
          if (every_generator_occurs(sub.presentation)) {
            if (auto t = magnus_stable_letter(sub.presentation)) {
              auto inner = std::make_shared<BrittonEngine const>(
                  sub.presentation, *t);
              return std::make_shared<MappedEngine const>(sub.forward,
                                                          inner);
            }
          }
        } catch (PreconditionError const&) {
          // fall through to Dehn
        }
      }
    }
    if (p.one_relator() && small_cancellation_check(p).c_prime_sixth) {
      return std::make_shared<DehnEngine const>(p);
    }
    throw PreconditionError("no word-problem engine applies to this "
                            "presentation");
  }

  std::vector<char> batch_is_trivial_serial(WordProblemEngine const&    e,
                                            std::vector<Letters> const& words) {
    std::vector<char> out(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      out[i] = e.is_trivial(words[i]);
    }
    return out;
  }

  std::vector<char> batch_is_trivial(WordProblemEngine const&    e,
                                     std::vector<Letters> const& words) {
    std::vector<char> out(words.size());
    auto const        n = static_cast<long>(words.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) {
      out[i] = e.is_trivial(words[i]);
    }
    return out;
  }

  std::vector<std::string> batch_keys(WordProblemEngine const&    e,
                                      std::vector<Letters> const& words,
                                      bool                        parallel) {
    std::vector<std::string> out(words.size());
    auto const               n = static_cast<long>(words.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
      for (long i = 0; i < n; ++i) {
        out[i] = *e.key(words[i]);
      }
    } else {
      for (long i = 0; i < n; ++i) {
        out[i] = *e.key(words[i]);
      }
    }
    return out;
  }

}  // namespace submon
