// Command-line front end: one subcommand per check, text/json/csv output.
// Exit status 0 on success, 1 when a check finds a failure, 2 on bad usage
// or input the library rejects.

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"

#include "tlab/tlab.hpp"

using namespace tlab;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string group = "f";
  Int p = 0;  // 0: derive from the scale factor
  Int scale = 1;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string bounds;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

Int to_int(const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

std::vector<Int> int_list(const std::string& s) {
  std::vector<Int> out;
  for (const auto& t : split(s, ',')) out.push_back(to_int(t));
  return out;
}

// --bounds k=v,k=v with only the listed keys allowed.
class Bounds {
 public:
  Bounds(const std::string& text, std::initializer_list<const char*> keys) {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : split(text, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("bounds entry needs k=v: '" + kv + "'");
      std::string k = kv.substr(0, eq);
      if (!allowed.count(k)) throw UsageError("unknown bounds key '" + k + "'");
      v_[k] = kv.substr(eq + 1);
    }
  }
  Int get(const std::string& k, Int dflt) const {
    auto it = v_.find(k);
    return it == v_.end() ? dflt : to_int(it->second);
  }
  // Colon-separated integer list, e.g. exponents=-3:-1:1:3.
  std::vector<Int> list(const std::string& k, std::vector<Int> dflt) const {
    auto it = v_.find(k);
    if (it == v_.end()) return dflt;
    std::vector<Int> out;
    for (const auto& t : split(it->second, ':')) out.push_back(to_int(t));
    return out;
  }

 private:
  std::map<std::string, std::string> v_;
};

EnumBounds enum_bounds(const std::string& text) {
  Bounds b(text, {"max_syllables", "max_subscript", "exponents", "samples", "min_syllables", "max_magnitude"});
  EnumBounds e;
  e.max_syllables = b.get("max_syllables", e.max_syllables);
  e.max_subscript = b.get("max_subscript", e.max_subscript);
  e.exponents = b.list("exponents", e.exponents);
  return e;
}

int emit(const Options& o, const json& j, const std::string& text, const std::string& csv = {}) {
  if (o.format == "json") {
    std::cout << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    if (csv.empty()) throw UsageError("csv output is not available for this command");
    std::cout << csv;
  } else {
    std::cout << text;
  }
  return 0;
}

template <class F>
int with_group(const std::string& g, F&& f) {
  if (g == "f") return f(std::type_identity<FGroup>{});
  if (g == "z2") return f(std::type_identity<Z2Group>{});
  if (g == "wreath") return f(std::type_identity<WreathGroup>{});
  if (g == "metab") return f(std::type_identity<MetabelianGroup>{});
  throw UsageError("unknown group '" + g + "' (f, z2, wreath, metab)");
}

template <class F>
int with_height_group(const std::string& g, F&& f) {
  return with_group(g, [&](auto tag) -> int {
    using G = typename decltype(tag)::type;
    if constexpr (G::has_height)
      return f(tag);
    else
      throw UsageError("group '" + g + "' has no height function");
  });
}

HeightConstants constants(const Options& o) { return HeightConstants::scaled(o.scale); }
Int p_value(const Options& o) { return o.p != 0 ? o.p : scaled_p(o.scale); }

const char* yes(bool b) { return b ? "true" : "false"; }

int status(bool pass) { return pass ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal forms, criteria checks and tree building for Thompson's group F"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--group", o.group, "f, z2, wreath or metab");
  app.add_option("--p", o.p, "odd p; defaults to 401 scaled by --scale");
  app.add_option("--scale", o.scale, "divide radius and thresholds by this factor");
  app.add_option("--seed", o.seed, "seed for sampling and tie-breaking");
  app.add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--bounds", o.bounds, "k=v,... limits for enumerations");

  std::string w1, w2, g_word, cls = "odd", ea = "odd", p_list, eps, deltas, colors = "mixed", mode = "optimal";
  std::string be_mode = "B", color = "black";
  Int extra_d = 1, extra_e = 1, radius = 100;
  bool literal = false, with_trees = false;
  std::function<int()> run;

  auto* normalize_cmd = app.add_subcommand("normalize", "Thompson normal form of a word");
  normalize_cmd->add_option("word", w1)->required();
  normalize_cmd->callback([&] {
    run = [&] {
      return with_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        auto x = evaluate<G>(parse_word(w1));
        json j = envelope("normalize");
        j["group"] = o.group;
        j["input"] = w1;
        j["normal_form"] = G::render(x);
        if constexpr (G::has_height) j["height"] = G::height(x);
        return emit(o, j, G::render(x) + "\n");
      });
    };
  });

  auto* core_cmd = app.add_subcommand("core-seq", "Iterated cores W0, W1, ... of a word");
  core_cmd->add_option("word", w1)->required();
  core_cmd->add_flag("--literal", literal, "take cores without cancelling X_m against X_m^-1");
  core_cmd->callback([&] {
    run = [&] {
      auto seq = core_sequence(parse_word(w1), literal ? CoreKind::literal : CoreKind::reduced);
      json j = envelope("core-seq");
      std::string text, csv = "index,word\n";
      j["sequence"] = json::array();
      for (std::size_t i = 0; i < seq.size(); ++i) {
        j["sequence"].push_back(render(seq[i]));
        text += render(seq[i]) + "\n";
        csv += std::to_string(i) + "," + render(seq[i]) + "\n";
      }
      return emit(o, j, text, csv);
    };
  });

  auto* classify_cmd = app.add_subcommand("classify", "Odd, semi-odd, unbalanced and (E,A) membership");
  classify_cmd->add_option("word", w1)->required();
  classify_cmd->add_option("--ea", ea, "odd or reduced")->check(CLI::IsMember({"odd", "reduced"}));
  classify_cmd->callback([&] {
    run = [&] {
      Word w = parse_word(w1);
      if (!is_reduced(w)) throw UsageError("classify needs a word in syllable normal form");
      auto r = classify(w, ea == "odd" ? EASpec::odd() : EASpec::nonzero());
      json j = envelope("classify");
      j["word"] = render(w);
      j["report"] = to_json(r);
      std::ostringstream t;
      t << "odd=" << yes(r.is_odd) << " semi_odd=" << yes(r.is_semi_odd) << " unbalanced=" << yes(r.unbalanced)
        << " ea_member=" << yes(r.ea_member) << " exceptions=" << r.exception_count << "\n";
      return emit(o, j, t.str());
    };
  });

  auto* equal_cmd = app.add_subcommand("equal", "Decide whether two words are equal in the group");
  equal_cmd->add_option("u", w1)->required();
  equal_cmd->add_option("v", w2)->required();
  equal_cmd->callback([&] {
    run = [&] {
      return with_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        Word u = parse_word(w1), v = parse_word(w2);
        bool eq = evaluate<G>(u) == evaluate<G>(v);
        json j = envelope("equal");
        j["group"] = o.group;
        j["equal"] = eq;
        if constexpr (std::is_same_v<G, FGroup>) j["pl_equal"] = pl_equal(u, v);
        emit(o, j, std::string(yes(eq)) + "\n");
        return status(eq);
      });
    };
  });

  auto* height_cmd = app.add_subcommand("height", "Height of the element a word represents");
  height_cmd->add_option("word", w1)->required();
  height_cmd->callback([&] {
    run = [&] {
      return with_height_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        auto x = evaluate<G>(parse_word(w1));
        json j = envelope("height");
        j["group"] = o.group;
        j["element"] = G::render(x);
        j["height"] = G::height(x);
        return emit(o, j, std::to_string(G::height(x)) + "\n");
      });
    };
  });

  auto* a_cmd = app.add_subcommand("check-a", "Abelian images of eta and xi are independent");
  a_cmd->callback([&] {
    run = [&] {
      return with_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        bool pass = check_condition_A<G>();
        json j = envelope("check-a");
        j["group"] = o.group;
        j["pass"] = pass;
        emit(o, j, std::string(pass ? "pass" : "fail") + "\n");
        return status(pass);
      });
    };
  });

  auto* be_cmd = app.add_subcommand("check-b", "eta^p0 xi^e1 ... xi^ek eta^pk avoids H u H'");
  be_cmd->add_option("--p-list", p_list, "p0,...,pk")->required();
  be_cmd->add_option("--eps", eps, "e1,...,ek")->required();
  be_cmd->add_option("--mode", be_mode, "B or E")->check(CLI::IsMember({"B", "E"}));
  be_cmd->callback([&] {
    run = [&] {
      return with_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        bool pass = check_BE_instance<G>(int_list(p_list), int_list(eps), be_mode == "B" ? BEMode::B : BEMode::E);
        json j = envelope("check-b");
        j["group"] = o.group;
        j["mode"] = be_mode;
        j["pass"] = pass;
        emit(o, j, std::string(pass ? "pass" : "fail") + "\n");
        return status(pass);
      });
    };
  });

  auto* c_cmd = app.add_subcommand("check-c", "An odd alternating eta/xi word is non-trivial");
  c_cmd->add_option("--deltas", deltas, "d1,...,dn")->required();
  c_cmd->add_option("--eps", eps, "e1,...,en")->required();
  c_cmd->callback([&] {
    run = [&] {
      return with_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        auto d = int_list(deltas), e = int_list(eps);
        bool pass = check_C_instance<G>(d, e);
        json j = envelope("check-c");
        j["group"] = o.group;
        j["pass"] = pass;
        j["element"] = G::render(alternating<G>(d, e));
        emit(o, j, std::string(pass ? "pass" : "fail") + "\n");
        return status(pass);
      });
    };
  });

  auto* d_cmd = app.add_subcommand("check-d", "Height condition at g for the given p");
  d_cmd->add_option("--g", g_word, "element g as a word")->required();
  d_cmd->callback([&] {
    run = [&] {
      return with_height_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        auto r = check_D<G>(evaluate<G>(parse_word(g_word)), p_value(o), constants(o));
        json j = envelope("check-d");
        j["group"] = o.group;
        j["report"] = to_json(r);
        std::ostringstream t;
        t << (r.pass ? "pass" : "fail") << " failing=" << r.failing_deltas_i.size();
        if (r.failing_deltas_i.size() == 1) t << " exception_delta=" << r.failing_deltas_i[0];
        t << "\n";
        emit(o, j, t.str());
        return status(r.pass);
      });
    };
  });

  auto* dp_cmd = app.add_subcommand("check-dprime", "h(g eta^d xi^e) > h(g) for alternating g");
  dp_cmd->add_option("--deltas", deltas)->required();
  dp_cmd->add_option("--eps", eps)->required();
  dp_cmd->add_option("--d", extra_d)->required();
  dp_cmd->add_option("--e", extra_e)->required();
  dp_cmd->add_option("--radius", radius);
  dp_cmd->callback([&] {
    run = [&] {
      return with_height_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        bool pass = check_Dprime_instance<G>(int_list(deltas), int_list(eps), extra_d, extra_e, radius);
        json j = envelope("check-dprime");
        j["group"] = o.group;
        j["pass"] = pass;
        emit(o, j, std::string(pass ? "pass" : "fail") + "\n");
        return status(pass);
      });
    };
  });

  auto* enum_cmd = app.add_subcommand("enumerate", "List every word of a class within bounds");
  enum_cmd->add_option("--class", cls, "odd, semi_odd or unbalanced_semi_odd");
  enum_cmd->callback([&] {
    run = [&] {
      auto words = enumerate_class(enum_bounds(o.bounds), parse_class(cls));
      json j = envelope("enumerate");
      j["class"] = class_name(parse_class(cls));
      j["count"] = words.size();
      j["words"] = json::array();
      std::string text, csv = "index,word\n";
      for (std::size_t i = 0; i < words.size(); ++i) {
        j["words"].push_back(render(words[i]));
        text += render(words[i]) + "\n";
        csv += std::to_string(i) + "," + render(words[i]) + "\n";
      }
      return emit(o, j, text, csv);
    };
  });

  auto* cover_cmd = app.add_subcommand("cover-oracle", "Exhaustive triple covering of a segment");
  cover_cmd->add_option("--colors", colors, "black, white or mixed")
      ->check(CLI::IsMember({"black", "white", "mixed"}));
  cover_cmd->add_option("--mode", mode, "optimal or all-maximal")->check(CLI::IsMember({"optimal", "all-maximal"}));
  cover_cmd->callback([&] {
    run = [&] {
      Bounds b(o.bounds, {"lo", "size"});
      auto I = segment(b.get("lo", 1), b.get("size", 12));
      CoverMode m = mode == "optimal" ? CoverMode::optimal : CoverMode::all_maximal;
      auto r = max_cover_oracle(I, colors != "white", colors != "black", m);
      json j = envelope("cover-oracle");
      j["colors"] = colors;
      j["mode"] = mode;
      j["size"] = I.size();
      j["report"] = to_json(r, m);
      std::ostringstream t;
      if (m == CoverMode::optimal)
        t << "optimal=" << r.optimal << "\n";
      else
        t << "min=" << r.min_cover << " max=" << r.max_cover << " placements=" << r.placements << "\n";
      return emit(o, j, t.str(), m == CoverMode::all_maximal ? to_csv(r) : std::string());
    };
  });

  auto* l52_cmd = app.add_subcommand("lemma52", "Black triple left implies white triple left, exhaustively");
  l52_cmd->callback([&] {
    run = [&] {
      Bounds b(o.bounds, {"lo", "size", "k"});
      auto r = lemma_5_2_exhaustive(segment(b.get("lo", 1), b.get("size", 12)), b.get("k", 2));
      json j = envelope("lemma52");
      j["result"] = to_json(r);
      emit(o, j, "cases=" + std::to_string(r.cases) + " failures=" + std::to_string(r.failures) + "\n");
      return status(r.failures == 0);
    };
  });

  auto* l54_cmd = app.add_subcommand("lemma54", "Covering inequality on seeded random placements");
  l54_cmd->callback([&] {
    run = [&] {
      Bounds b(o.bounds, {"count"});
      auto r = lemma_5_4_random(o.seed, static_cast<std::uint64_t>(b.get("count", 1000)));
      json j = envelope("lemma54");
      j["seed"] = o.seed;
      j["result"] = to_json(r);
      emit(o, j, "cases=" + std::to_string(r.cases) + " failures=" + std::to_string(r.failures) + "\n");
      return status(r.failures == 0);
    };
  });

  auto* gbt_cmd = app.add_subcommand("gbt-build", "Build trees on a finite window and report coverage");
  gbt_cmd->add_option("--color", color, "black or white")->check(CLI::IsMember({"black", "white"}));
  gbt_cmd->add_flag("--trees", with_trees, "include every tree in the json report");
  gbt_cmd->callback([&] {
    run = [&] {
      Bounds b(o.bounds, {"lines", "imin", "imax", "tile", "margin", "K"});
      WindowConfig c;
      c.lines = b.get("lines", c.lines);
      c.imin = b.get("imin", c.imin);
      c.imax = b.get("imax", c.imax);
      c.tile = b.get("tile", c.tile);
      c.margin = b.get("margin", c.margin);
      c.subline_radius = b.get("K", c.subline_radius);
      c.p = o.p != 0 ? o.p : scaled_p(o.scale == 1 ? 10 : o.scale);
      c.seed = o.seed;
      c.color = color == "black" ? Color::black : Color::white;
      return with_height_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        auto r = build_window_trees<G>(c);
        bool pass = r.covers() && r.end_fraction <= Rational(1, 4) && r.diagnostics.empty() && r.all_valid;
        json j = envelope("gbt-build");
        j["group"] = o.group;
        j["p"] = c.p;
        j["seed"] = c.seed;
        j["pass"] = pass;
        j["report"] = to_json(r, with_trees);
        std::ostringstream t;
        t << (pass ? "pass" : "fail") << " trees=" << r.trees.size() << " covered=" << r.f1_covered << "/"
          << r.f1_size << " end_fraction=" << rational_str(r.end_fraction) << " max_ray_coset=" << r.max_ray_coset
          << " separation_failures=" << r.separation_failures << "\n";
        emit(o, j, t.str(), tile_csv(r.tiles));
        return status(pass);
      });
    };
  });

  Int K = 5;
  auto* prof_cmd = app.add_subcommand("profile-subline", "Heights along g xi^(pk) for |k| <= K");
  prof_cmd->add_option("--g", g_word, "base element as a word")->required();
  prof_cmd->add_option("--K", K);
  prof_cmd->callback([&] {
    run = [&] {
      return with_height_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        auto s = p_subline_profile<G>(evaluate<G>(parse_word(g_word)), o.p != 0 ? o.p : 401, K);
        json j = envelope("profile-subline");
        j["group"] = o.group;
        j["profile"] = to_json(s);
        std::ostringstream t;
        t << "argmin=" << s.argmin << " heights=";
        for (std::size_t i = 0; i < s.heights.size(); ++i) t << (i ? "," : "") << s.heights[i];
        t << "\n";
        return emit(o, j, t.str(), to_csv(s));
      });
    };
  });

  auto* fam_cmd = app.add_subcommand("verify-family", "Every word of a class is non-trivial in the group");
  fam_cmd->add_option("--class", cls, "odd, semi_odd or unbalanced_semi_odd");
  fam_cmd->callback([&] {
    run = [&] {
      return with_group(o.group, [&](auto tag) {
        using G = typename decltype(tag)::type;
        WordClass wc = parse_class(cls);
        FamilyReport r;
        Bounds b(o.bounds, {"max_syllables", "max_subscript", "exponents", "samples", "min_syllables",
                            "max_magnitude"});
        if (b.get("samples", 0) > 0) {
          if (wc != WordClass::unbalanced_semi_odd) throw UsageError("samples= is for unbalanced_semi_odd");
          SampleBounds sb;
          sb.min_syllables = b.get("min_syllables", sb.min_syllables);
          sb.max_syllables = b.get("max_syllables", sb.max_syllables);
          sb.max_subscript = b.get("max_subscript", std::is_same_v<G, FGroup> ? sb.max_subscript : 1);
          sb.max_magnitude = b.get("max_magnitude", sb.max_magnitude);
          r = verify_sampled_unbalanced<G>(o.seed, static_cast<std::size_t>(b.get("samples", 0)), sb);
        } else {
          r = verify_family<G>(wc, enum_bounds(o.bounds));
        }
        json j = envelope("verify-family");
        j["group"] = o.group;
        j["report"] = to_json(r);
        std::string text = "checked=" + std::to_string(r.checked) + " failures=" + std::to_string(r.failures.size()) + "\n";
        for (const auto& f : r.failures) text += render(f.word) + " = " + f.normal_form + "\n";
        emit(o, j, text);
        return status(r.failures.empty());
      });
    };
  });

  auto* coll_cmd = app.add_subcommand("find-collisions", "Distinct odd words with equal value in F");
  coll_cmd->callback([&] {
    run = [&] {
      auto pairs = find_collisions(enum_bounds(o.bounds));
      json j = envelope("find-collisions");
      j["count"] = pairs.size();
      j["pairs"] = json::array();
      std::string text, csv = "u,v\n";
      for (const auto& [u, v] : pairs) {
        j["pairs"].push_back({render(u), render(v)});
        text += render(u) + " = " + render(v) + "\n";
        csv += render(u) + "," + render(v) + "\n";
      }
      return emit(o, j, text, csv);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
