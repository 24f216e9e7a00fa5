#include "submon/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "submon/automata.hpp"
#include "submon/builtins.hpp"
#include "submon/deciders.hpp"
#include "submon/engines.hpp"
#include "submon/errors.hpp"
#include "submon/magnus.hpp"

namespace submon {

  namespace {
    using json = nlohmann::ordered_json;

    struct Options {
      std::string       group;
      std::string       file;
      std::string       word;
      std::string       equals;
      std::string       gens;
      std::string       stable;
      std::vector<long> interval;
      long              m = 0, n = 0;
      bool              json_out  = false;
      bool              trace     = false;
      bool              serial    = false;
      std::size_t       max_nodes = 2'000'000;
      std::size_t       factors   = 8;
      long              max_twist = 3;
    };

    class Session {
     public:
      explicit Session(Options const& o) : _o(o) {
        _start = std::chrono::steady_clock::now();
      }

      Presentation presentation() const {
        if (!_o.file.empty()) {
          std::ifstream in(_o.file);
          if (!in) {
            throw PreconditionError("cannot read " + _o.file);
          }
          std::stringstream buf;
          buf << in.rdbuf();
          return parse_presentation_text(buf.str());
        }
        if (_o.group.empty()) {
          throw PreconditionError("a group is required (--group or --file)");
        }
        return builtin_presentation(_o.group);
      }

      // Genus and orientability of a surface builtin, if the group is one.
      std::optional<std::pair<std::size_t, bool>> surface() const {
        static std::regex const re("^\\s*([SsNn])\\s*([0-9]+)\\s*$");
        std::smatch             m;
        if (!_o.file.empty() || !std::regex_match(_o.group, m, re)) {
          return std::nullopt;
        }
        return std::make_pair(std::stoul(m[2].str()),
                              m[1].str() == "S" || m[1].str() == "s");
      }

      std::pair<std::size_t, bool> require_surface() const {
        auto s = surface();
        if (!s) {
          throw PreconditionError("this command needs a surface group "
                                  "(--group Sg or Ng)");
        }
        return *s;
      }

      std::optional<std::pair<long, long>> bs_parameters() const {
        static std::regex const re(
            "^\\s*[Bb][Ss]\\s*\\(?\\s*(-?[0-9]+)\\s*[ ,]\\s*(-?[0-9]+)\\s*\\)?"
            "\\s*$");
        std::smatch m;
        if (!_o.file.empty() || !std::regex_match(_o.group, m, re)) {
          return std::nullopt;
        }
        return std::make_pair(std::stol(m[1].str()), std::stol(m[2].str()));
      }

      bool is_burns() const {
        std::string g = _o.group;
        std::transform(g.begin(), g.end(), g.begin(), ::toupper);
        return _o.file.empty() && g == "BURNS";
      }

      std::vector<std::string> gen_texts() const {
        std::vector<std::string> out;
        std::stringstream        in(_o.gens);
        std::string              item;
        while (std::getline(in, item, ',')) {
          auto b = item.find_first_not_of(" \t");
          auto e = item.find_last_not_of(" \t");
          if (b == std::string::npos) {
            throw ParseError("empty generator in --gens",
                             static_cast<std::size_t>(in.tellg()));
          }
          out.push_back(item.substr(b, e - b + 1));
        }
        if (out.empty()) {
          throw PreconditionError("--gens must list at least one generator");
        }
        return out;
      }

      std::vector<Letters> gens(Alphabet const& A) const {
        std::vector<Letters> out;
        for (auto const& g : gen_texts()) {
          out.push_back(parse_letters(A, g));
        }
        return out;
      }

      std::set<char> letter_set() const {
        std::set<char> S;
        for (auto const& g : gen_texts()) {
          std::string s = g;
          if (s.size() == 2 && s[1] == '\'') {
            s = std::string(1, static_cast<char>(::toupper(s[0])));
          }
          if (s.size() != 1 || std::string("aAtT").find(s[0]) == std::string::npos) {
            throw PreconditionError("'" + g + "' is not one of a, A, t, T");
          }
          S.insert(s[0]);
        }
        return S;
      }

      Letters word(Alphabet const& A) const {
        return parse_letters(A, _o.word);
      }

      DeciderOptions decider_options() const {
        DeciderOptions opt;
        opt.search.max_nodes   = _o.max_nodes;
        opt.search.max_factors = _o.factors;
        opt.search.parallel    = !_o.serial;
        opt.max_twist          = _o.max_twist;
        return opt;
      }

      double elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - _start;
        return std::chrono::duration<double, std::milli>(d).count();
      }

      CliResult report(Verdict const& v) const {
        CliResult r;
        r.code = v.member() ? exit_code::yes
                 : v.non_member() ? exit_code::no
                                  : exit_code::unknown;
        if (_o.json_out) {
          json j;
          j["schema"]  = 1;
          j["verdict"] = to_string(v.outcome);
          j["method"]  = v.method;
          if (v.member()) {
            json w = json::array();
            for (auto i : v.witness) {
              w.push_back(v.generators.at(i));
            }
            j["witness"] = w;
          } else {
            j["witness"] = nullptr;
          }
          j["certificate"] = v.certificate;
          j["bound"]       = v.bound ? json(*v.bound) : json(nullptr);
          j["elapsed_ms"]  = elapsed_ms();
          if (!v.instance.empty()) {
            j["instance"] = json::parse(v.instance);
          }
          r.out = j.dump(2) + '\n';
        } else {
          std::ostringstream out;
          out << to_string(v.outcome) << '\n';
          if (v.member()) {
            out << "witness: " << v.witness_text() << '\n';
          }
          if (!v.certificate.empty()) {
            out << "certificate: " << v.certificate << '\n';
          }
          if (v.bound) {
            out << "bound: " << *v.bound << '\n';
          }
          if (!v.instance.empty()) {
            out << "instance: " << v.instance << '\n';
          }
          r.out = out.str();
        }
        if (_o.trace) {
          for (auto const& step : v.method) {
            r.err += "  " + step + '\n';
          }
        }
        return r;
      }

      // Results of the commands that answer true/false or emit data.
      CliResult report(bool answer, std::string const& method,
                       std::string const& text, json data = {}) const {
        CliResult r;
        r.code = answer ? exit_code::yes : exit_code::no;
        if (_o.json_out) {
          json j;
          j["schema"]      = 1;
          j["verdict"]     = answer;
          j["method"]      = json::array({method});
          j["witness"]     = nullptr;
          j["certificate"] = text;
          j["bound"]       = nullptr;
          j["elapsed_ms"]  = elapsed_ms();
          if (!data.is_null()) {
            j["result"] = data;
          }
          r.out = j.dump(2) + '\n';
        } else {
          r.out = text;
          if (!r.out.empty() && r.out.back() != '\n') {
            r.out += '\n';
          }
        }
        if (_o.trace) {
          r.err += "  " + method + '\n';
        }
        return r;
      }

      Options const& options() const noexcept {
        return _o;
      }

     private:
      Options const&                        _o;
      std::chrono::steady_clock::time_point _start;
    };

    std::string stable_of(Session const& s, Presentation const& p) {
      if (!s.options().stable.empty()) {
        return s.options().stable;
      }
      auto t = magnus_stable_letter(p);
      if (!t) {
        throw PreconditionError("no stable letter given and none found");
      }
      return p.alphabet()->name(*t);
    }

    ////////////////////////////////////////////////////////////////////
    // Commands
    ////////////////////////////////////////////////////////////////////

    CliResult cmd_wp(Session const& s) {
      auto p = s.presentation();
      auto e = make_engine(p);
      auto w = s.word(*p.alphabet());
      if (!s.options().equals.empty()) {
        w = multiply(w, inverse(parse_letters(*p.alphabet(), s.options().equals)));
      }
      bool t = e->is_trivial(w);
      return s.report(t, e->name(), t ? "true" : "false");
    }

    CliResult cmd_member(Session const& s) {
      auto opt = s.decider_options();
      if (auto surf = s.surface()) {
        auto p = surface_group(surf->first, surf->second);
        return s.report(decide_surface_submonoid(
            surf->first, surf->second, s.gens(*p.alphabet()),
            s.word(*p.alphabet()), opt));
      }
      if (auto bs = s.bs_parameters()) {
        try {
          auto S = s.letter_set();
          auto p = bs_group(bs->first, bs->second);
          return s.report(decide_bs_magnus(bs->first, bs->second, S,
                                           s.word(*p.alphabet()), opt));
        } catch (PreconditionError const&) {
          // not a Magnus set; fall through to the generic search
        }
      }
      if (s.is_burns()) {
        try {
          auto S = s.letter_set();
          return s.report(decide_burns_magnus(
              S, s.word(*burns_group().alphabet()), opt));
        } catch (PreconditionError const&) {
        }
      }
      auto p     = s.presentation();
      auto A     = p.alphabet();
      auto W     = s.gens(*A);
      auto w     = s.word(*A);
      auto names = s.gen_texts();
      if (p.relators().empty()) {
        std::vector<Word> WW;
        for (auto const& x : W) {
          WW.emplace_back(A, x);
        }
        Word ww(A, w);
        if (!benois_member(WW, ww)) {
          Verdict v;
          v.generators  = names;
          v.outcome     = Outcome::non_member;
          v.complete    = true;
          v.certificate = "saturated acceptor rejects w";
          v.trace(certified("rational subset membership in a free group"));
          return s.report(v);
        }
        auto bound     = min_generator_length(WW, ww);
        auto lim       = opt.search;
        lim.max_factors = bound;
        FreeEngine e;
        Verdict    v = bounded_search(e, W, names, w, lim);
        v.outcome    = Outcome::member;
        v.complete   = true;
        v.bound      = bound;
        if (v.witness.empty() && !reduce(w).empty()) {
          v.certificate = "saturated acceptor accepts w with "
                          + std::to_string(bound) + " factors";
        }
        v.method.insert(v.method.begin(),
                        certified("rational subset membership in a free group"));
        return s.report(v);
      }
      auto e = make_engine(p);
      return s.report(bounded_search(*e, W, names, w, opt.search));
    }

    CliResult cmd_prefix(Session const& s) {
      auto [g, orientable] = s.require_surface();
      auto p               = surface_group(g, orientable);
      return s.report(decide_prefix_surface(g, orientable,
                                            s.word(*p.alphabet()),
                                            s.decider_options()));
    }

    CliResult cmd_magnus(Session const& s) {
      auto [g, orientable] = s.require_surface();
      auto                p = surface_group(g, orientable);
      std::vector<Letter> X;
      for (auto const& x : s.gens(*p.alphabet())) {
        if (x.size() != 1) {
          throw PreconditionError("magnus generators must be single letters");
        }
        X.push_back(x.front());
      }
      return s.report(decide_surface_magnus(
          g, orientable, X, s.word(*p.alphabet()), s.decider_options()));
    }

    CliResult cmd_bs(Session const& s) {
      long m = s.options().m, n = s.options().n;
      if (auto bs = s.bs_parameters()) {
        std::tie(m, n) = *bs;
      }
      auto p = bs_group(m == 0 ? 1 : m, n == 0 ? 1 : n);
      return s.report(decide_bs_magnus(m, n, s.letter_set(),
                                       s.word(*p.alphabet()),
                                       s.decider_options()));
    }

    CliResult cmd_burns(Session const& s) {
      return s.report(decide_burns_magnus(
          s.letter_set(), s.word(*burns_group().alphabet()),
          s.decider_options()));
    }

    CliResult cmd_positivity(Session const& s) {
      auto p = s.presentation();
      return s.report(decide_positivity_fbc(p, s.word(*p.alphabet()),
                                            s.decider_options()));
    }

    CliResult cmd_analyze(Session const& s) {
      auto const& o = s.options();
      auto        p = s.presentation();
      std::string t = o.stable;
      if (t.empty()) {
        auto k = magnus_stable_letter(p);
        t      = p.alphabet()->name(k ? *k : p.alphabet()->size() - 1);
      }
      Word w = o.word.empty() ? p.relator()
                              : parse_word(p.alphabet(), o.word);
      auto rep = magnus_rewrite(w, t);
      std::string text = rep.to_text();
      json        data;
      data["stable"]    = t;
      data["rewritten"] = format_omega(*p.alphabet(), rep.word);
      data["maxmin"]    = rep.condition();
      if (!o.interval.empty()) {
        if (o.interval.size() != 2) {
          throw PreconditionError("--interval takes two integers");
        }
        auto ip = interval_presentation(p, t, o.interval[0], o.interval[1]);
        text += ip.to_text();
        data["interval"] = ip.to_text();
      }
      return s.report(rep.condition(), "Magnus rewriting", text, data);
    }

    CliResult cmd_reduce_dg(Session const& s) {
      auto p = s.presentation();
      auto t = stable_of(s, p);
      std::optional<Letters> q;
      if (!s.options().word.empty()) {
        q = s.word(*p.alphabet());
      }
      auto inst = reduce_to_dg_instance(p, t, s.gens(*p.alphabet()), q);
      return s.report(true, "reduction to an HNN membership instance",
                      inst.to_text(), json::parse(inst.to_json()));
    }

    CliResult cmd_gadget(Session const& s) {
      auto p   = s.presentation();
      auto out = emit_positivity_gadget(p, s.gens(*p.alphabet()));
      std::string text = format_presentation(out.presentation);
      text += "generating set:";
      for (auto const& g : out.generating_set) {
        text += ' ' + g;
      }
      text += "\n" + out.note + "\n";
      return s.report(true, "positivity gadget", text, json::parse(out.to_json()));
    }

    CliResult cmd_signs(Session const& s) {
      auto p   = s.presentation();
      auto X   = s.gens(*p.alphabet());
      auto sc  = choose_signs(p, X);
      auto txt = s.gen_texts();
      json data;
      std::ostringstream out;
      if (!sc.stable) {
        out << "no generator has nonzero exponent sum on X\n";
        data["stable"] = nullptr;
        return s.report(false, "sign choice", out.str(), data);
      }
      auto const& name = p.alphabet()->name(*sc.stable);
      out << "stable: " << name << '\n';
      data["stable"] = name;
      json signs     = json::array();
      for (std::size_t i = 0; i < X.size(); ++i) {
        out << txt[i] << ": " << (sc.signs[i] > 0 ? "+1" : "-1") << '\n';
        signs.push_back(sc.signs[i]);
      }
      data["signs"] = signs;
      return s.report(true, "sign choice", out.str(), data);
    }

    CliResult cmd_powers(Session const& s) {
      auto [g, orientable] = s.require_surface();
      if (!orientable) {
        throw PreconditionError("powers needs an orientable surface group");
      }
      auto p = surface_group(g, true);
      return s.report(powers_decider(g, s.gens(*p.alphabet()),
                                     s.word(*p.alphabet()),
                                     s.decider_options()));
    }
  }  // namespace

  CliResult run(std::vector<std::string> const& args) {
    Options  o;
    CLI::App app{"Submonoid membership in one-relator groups", "submon"};
    app.require_subcommand(1);

    auto add = [&](std::string const& name, std::string const& help) {
      auto* sub = app.add_subcommand(name, help);
      sub->add_flag("--json", o.json_out, "JSON output");
      sub->add_flag("--trace", o.trace, "print the method trace on stderr");
      return sub;
    };
    auto group = [&](CLI::App* sub) {
      sub->add_option("--group", o.group,
                      "builtin group: S2, N3, BS 2 3, BURNS, ...");
      sub->add_option("--file", o.file, "presentation file");
    };
    auto budget = [&](CLI::App* sub) {
      sub->add_option("--budget", o.max_nodes, "search node budget");
      sub->add_option("--factors", o.factors, "search factor budget");
      sub->add_option("--max-twist", o.max_twist, "Dehn twist powers tried");
      sub->add_flag("--serial", o.serial, "no OpenMP in searches");
    };

    auto* wp = add("wp", "word problem");
    group(wp);
    wp->add_option("--word", o.word)->required();
    wp->add_option("--equals", o.equals, "compare with this word");

    auto* member = add("member", "submonoid membership");
    group(member);
    budget(member);
    member->add_option("--gens", o.gens, "comma separated words")->required();
    member->add_option("--word", o.word)->required();

    auto* prefix = add("prefix", "prefix monoid of a surface group");
    group(prefix);
    budget(prefix);
    prefix->add_option("--word", o.word)->required();

    auto* magnus = add("magnus", "Magnus submonoid of a surface group");
    group(magnus);
    budget(magnus);
    magnus->add_option("--gens", o.gens, "signed letters")->required();
    magnus->add_option("--word", o.word)->required();

    auto* bs = add("bs-magnus", "Magnus submonoid of BS(m,n)");
    group(bs);
    budget(bs);
    bs->add_option("-m,--m", o.m);
    bs->add_option("-n,--n", o.n);
    bs->add_option("--gens", o.gens, "subset of a, A, t, T")->required();
    bs->add_option("--word", o.word)->required();

    auto* burns = add("burns", "Magnus submonoid of the Burns group");
    budget(burns);
    burns->add_option("--gens", o.gens, "subset of a, A, t, T")->required();
    burns->add_option("--word", o.word)->required();

    auto* pos = add("positivity", "positivity in a two-generator group");
    group(pos);
    budget(pos);
    pos->add_option("--word", o.word)->required();

    auto* analyze = add("analyze", "Magnus rewriting and interval presentations");
    group(analyze);
    analyze->add_option("--stable", o.stable);
    analyze->add_option("--word", o.word, "rewrite this word, not the relator");
    analyze->add_option("--interval", o.interval, "n m")->expected(2);

    auto* dg = add("reduce-dg", "emit an HNN membership instance");
    group(dg);
    dg->add_option("--stable", o.stable);
    dg->add_option("--gens", o.gens)->required();
    dg->add_option("--word", o.word);

    auto* gadget = add("gadget", "positivity gadget for Mon<X>");
    group(gadget);
    gadget->add_option("--gens", o.gens)->required();

    auto* signs = add("signs", "stable letter and signs for X");
    group(signs);
    signs->add_option("--gens", o.gens)->required();

    auto* powers = add("powers", "submonoids generated by powers in S_g");
    group(powers);
    budget(powers);
    powers->add_option("--gens", o.gens, "powers s^k")->required();
    powers->add_option("--word", o.word)->required();

    CliResult r;
    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (CLI::ParseError const& e) {
      std::ostringstream out, err;
      int                code = app.exit(e, out, err);
      r.out  = out.str();
      r.err  = err.str();
      r.code = code == 0 ? exit_code::yes : exit_code::error;
      return r;
    }

    Session s(o);
    auto*   sub = app.get_subcommands().front();
    auto    nm  = sub->get_name();
    try {
      if (nm == "wp") return cmd_wp(s);
      if (nm == "member") return cmd_member(s);
      if (nm == "prefix") return cmd_prefix(s);
      if (nm == "magnus") return cmd_magnus(s);
      if (nm == "bs-magnus") return cmd_bs(s);
      if (nm == "burns") return cmd_burns(s);
      if (nm == "positivity") return cmd_positivity(s);
      if (nm == "analyze") return cmd_analyze(s);
      if (nm == "reduce-dg") return cmd_reduce_dg(s);
      if (nm == "gadget") return cmd_gadget(s);
      if (nm == "signs") return cmd_signs(s);
      if (nm == "powers") return cmd_powers(s);
      r.err = "unknown command " + nm + '\n';
    } catch (ParseError const& e) {
      r.err = std::string("parse error: ") + e.what() + '\n';
    } catch (PreconditionError const& e) {
      r.err = std::string("precondition: ") + e.what() + '\n';
    } catch (Error const& e) {
      r.err = std::string("error: ") + e.what() + '\n';
    }
    r.code = exit_code::error;
    return r;
  }

}  // namespace submon
