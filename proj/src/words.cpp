#include "submon/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace submon {

  ////////////////////////////////////////////////////////////////////////
  // Letter-vector kernels
  ////////////////////////////////////////////////////////////////////////

  void reduce_in_place(Letters& w) {
    std::size_t top = 0;
    for (Letter x : w) {
      if (top > 0 && w[top - 1] == -x) {
        --top;
      } else {
        w[top++] = x;
      }
    }
    w.resize(top);
  }

  Letters reduce(Letters const& w) {
    Letters out = w;
    reduce_in_place(out);
    return out;
  }

  Letters inverse(Letters const& w) {
    Letters out(w.rbegin(), w.rend());
    for (Letter& x : out) {
      x = -x;
    }
    return out;
  }

  void append_reduced(Letters& u, Letters const& v) {
    std::size_t i = 0;
    while (i < v.size() && !u.empty() && u.back() == -v[i]) {
      u.pop_back();
      ++i;
    }
    u.insert(u.end(), v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
  }

  Letters multiply(Letters const& u, Letters const& v) {
    Letters out = u;
    append_reduced(out, v);
    return out;
  }

  bool is_reduced(Letters const& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == -w[i - 1]) {
        return false;
      }
    }
    return true;
  }

  bool is_cyclically_reduced(Letters const& w) {
    return is_reduced(w) && (w.size() < 2 || w.front() != -w.back());
  }

  std::pair<Letters, Letters> cyclic_reduce(Letters const& w) {
    Letters     r = reduce(w);
    std::size_t i = 0, j = r.size();
    while (j - i >= 2 && r[i] == -r[j - 1]) {
      ++i;
      --j;
    }
    Letters core(r.begin() + static_cast<std::ptrdiff_t>(i),
                 r.begin() + static_cast<std::ptrdiff_t>(j));
    Letters conj(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i));
    return {std::move(core), std::move(conj)};
  }

  long exponent_sum(Letters const& w, std::size_t gen) {
    long s = 0;
    for (Letter x : w) {
      if (gen_of(x) == gen) {
        s += sign_of(x);
      }
    }
    return s;
  }

  Letters power(Letters const& w, long k) {
    Letters base = k >= 0 ? reduce(w) : inverse(reduce(w));
    Letters out;
    for (long i = 0; i < std::labs(k); ++i) {
      append_reduced(out, base);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool valid_name(std::string const& s) {
      if (s.empty()) {
        return false;
      }
      return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
      });
    }
  }  // namespace

  Alphabet::Alphabet(std::vector<std::string> names)
      : _names(std::move(names)), _lookup(), _compact(true) {
    if (_names.empty()) {
      throw PreconditionError("alphabet must be nonempty");
    }
    for (std::size_t i = 0; i < _names.size(); ++i) {
      auto const& n = _names[i];
      if (!valid_name(n)) {
        throw PreconditionError("invalid generator name '" + n + "'");
      }
      if (!_lookup.emplace(n, i).second) {
        throw PreconditionError("duplicate generator '" + n + "'");
      }
      if (n.size() != 1 || !std::islower(static_cast<unsigned char>(n[0]))) {
        _compact = false;
      }
    }
  }

  std::optional<std::size_t> Alphabet::find(std::string_view name) const {
    auto it = _lookup.find(std::string(name));
    if (it == _lookup.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::size_t Alphabet::index(std::string_view name) const {
    auto i = find(name);
    if (!i) {
      throw PreconditionError("unknown generator '" + std::string(name)
                              + "'");
    }
    return *i;
  }

  AlphabetPtr make_alphabet(std::vector<std::string> names) {
    return std::make_shared<Alphabet const>(std::move(names));
  }

  bool same_alphabet(AlphabetPtr const& x, AlphabetPtr const& y) {
    if (x == y) {
      return true;
    }
    if (!x || !y) {
      return false;
    }
    return *x == *y;
  }

  ////////////////////////////////////////////////////////////////////////
  // Word
  ////////////////////////////////////////////////////////////////////////

  Word::Word(AlphabetPtr alphabet, Letters letters)
      : _alphabet(std::move(alphabet)), _letters(std::move(letters)) {
    if (!_alphabet) {
      throw PreconditionError("word without alphabet");
    }
    for (Letter x : _letters) {
      if (x == 0 || gen_of(x) >= _alphabet->size()) {
        throw PreconditionError("letter out of range for alphabet");
      }
    }
  }

  Word Word::operator*(Word const& other) const {
    if (!same_alphabet(_alphabet, other._alphabet)) {
      throw PreconditionError("cannot multiply words over different "
                              "alphabets");
    }
    return Word(_alphabet, multiply(reduce(_letters), reduce(other._letters)));
  }

  Word Word::concat(Word const& other) const {
    if (!same_alphabet(_alphabet, other._alphabet)) {
      throw PreconditionError("cannot concatenate words over different "
                              "alphabets");
    }
    Letters out = _letters;
    out.insert(out.end(), other._letters.begin(), other._letters.end());
    return Word(_alphabet, std::move(out));
  }

  Word Word::inverse() const {
    return Word(_alphabet, submon::inverse(_letters));
  }

  Word free_reduce(Word const& w) {
    return Word(w.alphabet(), reduce(w.letters()));
  }

  CyclicReduction cyclic_reduce(Word const& w) {
    auto [core, conj] = cyclic_reduce(w.letters());
    return {Word(w.alphabet(), std::move(core)),
            Word(w.alphabet(), std::move(conj))};
  }

  long exponent_sum(Word const& w, std::string_view gen) {
    return exponent_sum(w.letters(), w.alphabet()->index(gen));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text form
  ////////////////////////////////////////////////////////////////////////

  std::string format_letters(Alphabet const& alphabet, Letters const& w) {
    std::string out;
    if (alphabet.compact()) {
      for (Letter x : w) {
        char c = alphabet.name(gen_of(x))[0];
        out += x > 0 ? c : static_cast<char>(std::toupper(c));
      }
      return out.empty() ? "1" : out;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += ' ';
      }
      out += alphabet.name(gen_of(w[i]));
      if (w[i] < 0) {
        out += '\'';
      }
    }
    return out.empty() ? "1" : out;
  }

  std::string to_string(Word const& w) {
    return format_letters(*w.alphabet(), w.letters());
  }

  std::string to_token_string(Word const& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += ' ';
      }
      out += w.alphabet()->name(gen_of(w.letters()[i]));
      if (w.letters()[i] < 0) {
        out += '\'';
      }
    }
    return out.empty() ? "1" : out;
  }

  namespace {
    bool is_word_space(char c) {
      return std::isspace(static_cast<unsigned char>(c)) || c == '*'
             || c == '.' || c == ',';
    }

    void parse_token(Alphabet const& alphabet, std::string_view tok,
                     std::size_t offset, Letters& out) {
      if (tok == "1") {
        return;
      }
      std::string_view body = tok;
      long             exp  = 1;
      if (auto hat = body.find('^'); hat != std::string_view::npos) {
        auto digits = body.substr(hat + 1);
        auto res    = std::from_chars(digits.data(),
                                   digits.data() + digits.size(), exp);
        if (res.ec != std::errc() || res.ptr != digits.data() + digits.size()) {
          throw ParseError("bad exponent in '" + std::string(tok) + "'",
                           offset + hat);
        }
        body = body.substr(0, hat);
      }
      int sign = 1;
      while (!body.empty() && body.back() == '\'') {
        sign = -sign;
        body.remove_suffix(1);
      }
      Letters piece;
      if (auto i = alphabet.find(body)) {
        piece.push_back(make_letter(*i, sign));
      } else if (alphabet.compact()) {
        for (std::size_t k = 0; k < body.size(); ++k) {
          unsigned char c = static_cast<unsigned char>(body[k]);
          auto          j = alphabet.find(std::string(
              1, static_cast<char>(std::tolower(c))));
          if (!j || !std::isalpha(c)) {
            throw ParseError("unknown letter '" + std::string(1, body[k])
                                 + "'",
                             offset + k);
          }
          piece.push_back(make_letter(*j, std::isupper(c) ? -1 : 1));
        }
        if (sign < 0) {
          piece = submon::inverse(piece);
        }
      } else {
        throw ParseError("unknown generator '" + std::string(body) + "'",
                         offset);
      }
      if (exp < 0) {
        piece = submon::inverse(piece);
      }
      for (long e = 0; e < std::labs(exp); ++e) {
        out.insert(out.end(), piece.begin(), piece.end());
      }
    }
  }  // namespace

  Letters parse_letters(Alphabet const& alphabet, std::string_view text) {
    Letters     out;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_word_space(text[i])) {
        ++i;
      }
      std::size_t j = i;
      while (j < text.size() && !is_word_space(text[j])) {
        ++j;
      }
      if (j > i) {
        auto tok = text.substr(i, j - i);
        if (tok != "ε" && tok != "eps") {
          parse_token(alphabet, tok, i, out);
        }
      }
      i = j;
    }
    return out;
  }

  Word parse_word(AlphabetPtr const& alphabet, std::string_view text) {
    return Word(alphabet, parse_letters(*alphabet, text));
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentation
  ////////////////////////////////////////////////////////////////////////

  Presentation::Presentation(AlphabetPtr alphabet, std::vector<Word> relators)
      : _alphabet(std::move(alphabet)), _relators(std::move(relators)) {
    for (auto const& r : _relators) {
      if (!same_alphabet(r.alphabet(), _alphabet)) {
        throw PreconditionError("relator over a foreign alphabet");
      }
    }
  }

  Word const& Presentation::relator() const {
    if (!one_relator()) {
      throw PreconditionError("presentation is not one-relator");
    }
    return _relators.front();
  }

  Presentation parse_presentation_text(std::string_view text) {
    std::vector<std::string> gens;
    std::vector<std::pair<std::string, std::size_t>> rels;
    bool        have_gens = false;
    std::size_t pos       = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) {
        eol = text.size();
      }
      std::string_view line = text.substr(pos, eol - pos);
      if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      auto colon = line.find(':');
      auto key   = line.substr(0, colon);
      while (!key.empty() && std::isspace(static_cast<unsigned char>(key.front()))) {
        key.remove_prefix(1);
      }
      while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) {
        key.remove_suffix(1);
      }
      if (colon == std::string_view::npos) {
        if (!key.empty()) {
          throw ParseError("expected 'gens:' or 'rel:'", pos);
        }
      } else if (key == "gens") {
        if (have_gens) {
          throw ParseError("second gens line", pos);
        }
        have_gens = true;
        std::istringstream in{std::string(line.substr(colon + 1))};
        std::string        g;
        while (in >> g) {
          gens.push_back(g);
        }
      } else if (key == "rel" || key == "rels") {
        rels.emplace_back(std::string(line.substr(colon + 1)),
                          pos + colon + 1);
      } else {
        throw ParseError("unknown key '" + std::string(key) + "'", pos);
      }
      pos = eol + 1;
    }
    if (!have_gens) {
      throw ParseError("missing gens line", 0);
    }
    AlphabetPtr alphabet;
    try {
      alphabet = make_alphabet(gens);
    } catch (PreconditionError const& e) {
      throw ParseError(e.what(), 0);
    }
    std::vector<Word> relators;
    for (auto const& [body, offset] : rels) {
      try {
        relators.push_back(parse_word(alphabet, body));
      } catch (ParseError const& e) {
        throw ParseError(std::string("in relator: ") + e.what(),
                         offset + e.position());
      }
    }
    return Presentation(alphabet, std::move(relators));
  }

  std::string format_presentation(Presentation const& p) {
    std::string out = "gens:";
    for (auto const& n : p.alphabet()->names()) {
      out += ' ' + n;
    }
    out += '\n';
    for (auto const& r : p.relators()) {
      out += "rel: " + to_token_string(r) + '\n';
    }
    return out;
  }

  Presentation eliminate_generator(Presentation const& p,
                                   std::string_view    gen) {
    std::size_t const g = p.alphabet()->index(gen);
    std::size_t       which = p.relators().size();
    for (std::size_t k = 0; k < p.relators().size(); ++k) {
      auto const& r     = p.relators()[k].letters();
      auto        count = std::count_if(r.begin(), r.end(), [g](Letter x) {
        return gen_of(x) == g;
      });
      if (count == 1) {
        which = k;
        break;
      }
    }
    if (which == p.relators().size()) {
      throw PreconditionError("no relator contains '" + std::string(gen)
                              + "' exactly once");
    }
    // r = U x^e V  =>  x^e = U^-1 V^-1.
    Letters const& r   = p.relators()[which].letters();
    auto           it  = std::find_if(r.begin(), r.end(),
                           [g](Letter x) { return gen_of(x) == g; });
    Letters        u(r.begin(), it), v(it + 1, r.end());
    Letters        val = multiply(inverse(u), inverse(v));
    if (*it < 0) {
      val = inverse(val);
    }

    std::vector<std::string> names;
    std::vector<std::size_t> remap(p.alphabet()->size(), 0);
    for (std::size_t i = 0; i < p.alphabet()->size(); ++i) {
      if (i != g) {
        remap[i] = names.size();
        names.push_back(p.alphabet()->name(i));
      }
    }
    if (names.empty()) {
      throw PreconditionError("cannot eliminate the only generator");
    }
    auto    alphabet = make_alphabet(names);
    auto    rename   = [&](Letters const& w) {
      Letters out;
      for (Letter x : w) {
        if (gen_of(x) == g) {
          Letters piece = x > 0 ? val : inverse(val);
          for (Letter y : piece) {
            out.push_back(make_letter(remap[gen_of(y)], sign_of(y)));
          }
        } else {
          out.push_back(make_letter(remap[gen_of(x)], sign_of(x)));
        }
      }
      return cyclic_reduce(out).first;
    };
    std::vector<Word> relators;
    for (std::size_t k = 0; k < p.relators().size(); ++k) {
      if (k == which) {
        continue;
      }
      Letters w = rename(p.relators()[k].letters());
      if (!w.empty()) {
        relators.emplace_back(alphabet, std::move(w));
      }
    }
    return Presentation(alphabet, std::move(relators));
  }

  ////////////////////////////////////////////////////////////////////////
  // Homomorphisms
  ////////////////////////////////////////////////////////////////////////

  GroupHom::GroupHom(AlphabetPtr source, AlphabetPtr target,
                     std::vector<Letters> images)
      : _source(std::move(source)),
        _target(std::move(target)),
        _images(std::move(images)) {
    if (!_source || !_target) {
      throw PreconditionError("homomorphism needs both alphabets");
    }
    if (_images.size() != _source->size()) {
      throw PreconditionError("homomorphism must define every generator");
    }
    for (auto& im : _images) {
      for (Letter x : im) {
        if (x == 0 || gen_of(x) >= _target->size()) {
          throw PreconditionError("image letter outside target alphabet");
        }
      }
      reduce_in_place(im);
    }
  }

  GroupHom GroupHom::identity(AlphabetPtr alphabet) {
    std::vector<Letters> images;
    for (std::size_t i = 0; i < alphabet->size(); ++i) {
      images.push_back({make_letter(i, 1)});
    }
    return GroupHom(alphabet, alphabet, std::move(images));
  }

  GroupHom GroupHom::from_strings(
      AlphabetPtr source, AlphabetPtr target,
      std::vector<std::pair<std::string, std::string>> const& images) {
    std::vector<std::optional<Letters>> slots(source->size());
    for (auto const& [name, text] : images) {
      slots[source->index(name)] = parse_letters(*target, text);
    }
    std::vector<Letters> out;
    for (std::size_t i = 0; i < source->size(); ++i) {
      if (slots[i]) {
        out.push_back(*slots[i]);
      } else if (auto j = target->find(source->name(i))) {
        out.push_back({make_letter(*j, 1)});
      } else {
        throw PreconditionError("no image given for '" + source->name(i)
                                + "'");
      }
    }
    return GroupHom(std::move(source), std::move(target), std::move(out));
  }

  Letters GroupHom::apply(Letters const& w) const {
    Letters out;
    for (Letter x : w) {
      if (x == 0 || gen_of(x) >= _images.size()) {
        throw PreconditionError("letter outside homomorphism source");
      }
      auto const& im = _images[gen_of(x)];
      if (x > 0) {
        append_reduced(out, im);
      } else {
        append_reduced(out, submon::inverse(im));
      }
    }
    return out;
  }

  Word GroupHom::operator()(Word const& w) const {
    if (!same_alphabet(w.alphabet(), _source)) {
      throw PreconditionError("word alphabet does not match homomorphism "
                              "source");
    }
    return Word(_target, apply(w.letters()));
  }

  GroupHom GroupHom::after(GroupHom const& other) const {
    if (!same_alphabet(other._target, _source)) {
      throw PreconditionError("homomorphisms do not compose");
    }
    std::vector<Letters> images;
    for (auto const& im : other._images) {
      images.push_back(apply(im));
    }
    return GroupHom(other._source, _target, std::move(images));
  }

  std::size_t GroupHom::max_image_length() const {
    std::size_t c = 0;
    for (auto const& im : _images) {
      c = std::max(c, im.size());
    }
    return c;
  }

  Word apply_hom(GroupHom const& h, Word const& w) {
    return h(w);
  }

}  // namespace submon
