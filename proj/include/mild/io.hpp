#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mild/mildness.hpp"
#include "mild/presentation.hpp"

namespace mild {

using nlohmann::json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string digest_hex(const std::string& bytes) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

inline json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON in " + what);
  return j;
}

/// {"prime": p, "generators": [{"name": str, "weight": int?}...],
///  "relators": [str...]}
inline Alphabet alphabet_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("\"generators\" must be a nonempty array");
  std::vector<std::string> names;
  std::vector<int> weights;
  for (const auto& g : j) {
    if (g.is_string()) {
      names.push_back(g.get<std::string>());
      weights.push_back(1);
    } else if (g.is_object()) {
      if (!g.contains("name")) throw InputError("generator entry lacks a \"name\"");
      names.push_back(g.at("name").get<std::string>());
      weights.push_back(g.value("weight", 1));
    } else {
      throw InputError("generator entries must be names or {name, weight} objects");
    }
  }
  return Alphabet(std::move(names), std::move(weights));
}

inline unsigned prime_from_json(const json& j, const std::string& what) {
  if (!j.contains("prime")) throw InputError(what + " lacks a \"prime\" field");
  long long p = j.at("prime").get<long long>();
  if (p < 2 || !is_prime(static_cast<unsigned>(p))) throw InputError("\"prime\" must be a prime number");
  return static_cast<unsigned>(p);
}

inline Presentation presentation_from_json(const json& j, std::optional<int> cap = std::nullopt) {
  unsigned p = prime_from_json(j, "presentation file");
  Alphabet alphabet = alphabet_from_json(j.at("generators"));
  if (!j.contains("relators") || !j.at("relators").is_array() || j.at("relators").empty())
    throw InputError("presentation file needs a nonempty \"relators\" array");
  std::vector<GroupElement> relators;
  for (const auto& r : j.at("relators")) {
    if (!r.is_string()) throw InputError("relators must be strings");
    relators.push_back(parse_relator(r.get<std::string>(), alphabet));
  }
  return Presentation(p, std::move(alphabet), std::move(relators), cap);
}

/// {"vertices": [str...], "edges": [[str, str]...]}
inline Graph graph_from_json(const json& j) {
  if (!j.contains("vertices") || !j.at("vertices").is_array())
    throw InputError("graph file needs a \"vertices\" array");
  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) vertices.push_back(v.get<std::string>());
  Alphabet lookup(vertices);
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges"))
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("edges must be vertex pairs");
      int a = lookup.index_of(e.at(0).get<std::string>());
      int b = lookup.index_of(e.at(1).get<std::string>());
      if (a < 0 || b < 0) throw InputError("edge references an unknown vertex");
      edges.emplace_back(a, b);
    }
  return Graph(std::move(vertices), std::move(edges));
}

/// {"prime": p, "d": int, "m": int, "a": {"j": int...},
///  "ajk": [[j, k, value]...]}; indices are 1-based, omitted entries are 0.
inline KochData koch_from_json(const json& j) {
  unsigned p = prime_from_json(j, "Koch file");
  if (!j.contains("d") || !j.contains("m")) throw InputError("Koch file needs \"d\" and \"m\"");
  int d = j.at("d").get<int>(), m = j.at("m").get<int>();
  if (d < 1 || m < 1 || m > d) throw InputError("Koch file needs 1 <= m <= d");
  KochData data = KochData::zero(p, d, m);
  if (j.contains("a")) {
    for (const auto& [key, val] : j.at("a").items()) {
      int idx = std::stoi(key);
      if (idx < 1 || idx > m) throw InputError("Koch \"a\" index out of range");
      long long v = val.get<long long>();
      if (v < 0 || v >= static_cast<long long>(p)) throw InputError("Koch a_j out of [0,p)");
      data.a[idx] = static_cast<unsigned>(v);
    }
  }
  if (j.contains("ajk")) {
    for (const auto& e : j.at("ajk")) {
      if (!e.is_array() || e.size() != 3) throw InputError("Koch \"ajk\" entries must be [j,k,value]");
      int jj = e.at(0).get<int>(), kk = e.at(1).get<int>();
      long long v = e.at(2).get<long long>();
      if (jj < 1 || jj > m || kk < 1 || kk > d || jj == kk)
        throw InputError("Koch \"ajk\" index out of range");
      if (v < 0 || v >= static_cast<long long>(p)) throw InputError("Koch a_jk out of [0,p)");
      data.ajk[jj][kk] = static_cast<unsigned>(v);
    }
  }
  data.validate();
  return data;
}

/// Space-separated letter names, e.g. "x1 x2".
inline Word parse_word(const std::string& text, const Alphabet& alphabet) {
  std::istringstream ss(text);
  std::string name;
  std::vector<int> letters;
  while (ss >> name) {
    int idx = alphabet.index_of(name);
    if (idx < 0) throw InputError("unknown letter '" + name + "' in word \"" + text + "\"");
    letters.push_back(idx);
  }
  return Word(std::move(letters));
}

struct FormsFile {
  unsigned p;
  Alphabet alphabet;
  std::vector<HomogeneousPoly> forms;
};

/// {"prime": p, "generators": [...], "forms": [{"x1 x2": 1, "x2 x1": -1}...]}
inline FormsFile forms_from_json(const json& j) {
  unsigned p = prime_from_json(j, "forms file");
  Alphabet alphabet = alphabet_from_json(j.at("generators"));
  if (!j.contains("forms") || !j.at("forms").is_array())
    throw InputError("forms file needs a \"forms\" array");
  std::vector<HomogeneousPoly> forms;
  for (const auto& f : j.at("forms")) {
    if (!f.is_object()) throw InputError("each form must be a {word: coefficient} object");
    HomogeneousPoly poly;
    bool first = true;
    for (const auto& [key, val] : f.items()) {
      Word w = parse_word(key, alphabet);
      if (w.empty()) throw InputError("form monomials must be nonempty words");
      int deg = tau_degree(w, alphabet);
      if (first) {
        poly.degree = deg;
        first = false;
      } else if (deg != poly.degree) {
        throw InputError("form is not tau-homogeneous");
      }
      poly.add(w, fp_norm(val.get<long long>(), p), p);
    }
    if (poly.zero()) throw InputError("zero form in forms file");
    forms.push_back(std::move(poly));
  }
  return FormsFile{p, std::move(alphabet), std::move(forms)};
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

inline std::vector<int> parse_base_order(const std::string& text, const Alphabet& alphabet) {
  std::vector<int> base;
  for (const auto& part : split(text, '<')) {
    std::string name = strip(part);
    int idx = alphabet.index_of(name);
    if (idx < 0) throw InputError("unknown letter '" + name + "' in order string");
    base.push_back(idx);
  }
  return base;
}

}  // namespace detail

/// Order strings:
///   lex[:x2<x1<...]
///   lenlex[:x2<x4<x1<x3]
///   gorder:tau=1;parts=Y0:x1,x3|Y1:x2,x4[;base=x1<x2<...]
///   op:<inner>
inline OrderSpec parse_order(const std::string& text, const Alphabet& alphabet) {
  int d = alphabet.size();
  if (text.rfind("op:", 0) == 0) return OrderSpec::opposite(parse_order(text.substr(3), alphabet));
  auto colon = text.find(':');
  std::string head = colon == std::string::npos ? text : text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "lex" || head == "lenlex") {
    std::vector<int> base;
    if (!rest.empty()) base = detail::parse_base_order(rest, alphabet);
    return head == "lex" ? OrderSpec::lex(d, std::move(base)) : OrderSpec::length_lex(d, std::move(base));
  }
  if (head == "gorder") {
    std::vector<int> tau(alphabet.weights());
    std::vector<std::vector<std::uint8_t>> sigmas;
    std::vector<int> base;
    for (const auto& clause : detail::split(rest, ';')) {
      auto eq = clause.find('=');
      if (eq == std::string::npos) throw InputError("malformed g-order clause: " + clause);
      std::string key = detail::strip(clause.substr(0, eq));
      std::string val = detail::strip(clause.substr(eq + 1));
      if (key == "tau") {
        if (val == "alphabet") {
          tau = alphabet.weights();
        } else {
          int w = std::stoi(val);
          if (w < 1) throw InputError("g-order tau must be >= 1");
          tau.assign(d, w);
        }
      } else if (key == "parts") {
        // Y0:...|Y1:...; classes beyond Y0 supply the sigma maps in order
        auto parts = detail::split(val, '|');
        std::vector<std::vector<std::uint8_t>> maps;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          auto colon2 = parts[i].find(':');
          if (colon2 == std::string::npos) throw InputError("malformed part: " + parts[i]);
          std::vector<std::uint8_t> sigma(d, 0);
          for (const auto& name : detail::split(parts[i].substr(colon2 + 1), ',')) {
            int idx = alphabet.index_of(detail::strip(name));
            if (idx < 0) throw InputError("unknown letter in part: " + name);
            sigma[idx] = 1;
          }
          maps.push_back(std::move(sigma));
        }
        if (maps.size() < 2) throw InputError("g-order parts need at least Y0 and Y1");
        sigmas.assign(maps.begin() + 1, maps.end());
      } else if (key == "base") {
        base = detail::parse_base_order(val, alphabet);
      } else {
        throw InputError("unknown g-order clause: " + key);
      }
    }
    return OrderSpec::g_order(std::move(tau), std::move(sigmas), std::move(base));
  }
  throw InputError("unknown order kind: " + head);
}

// ---- report serialization ----------------------------------------------

inline std::string signed_coeff(unsigned c, unsigned p) {
  // balanced rendering: residues above p/2 print as negatives
  if (c <= p / 2) return std::to_string(c);
  return "-" + std::to_string(p - c);
}

inline json word_json(const Word& w, const Alphabet& alphabet) {
  return format_word(w, alphabet, " ");
}

inline json poly_json(const HomogeneousPoly& f, const Alphabet& alphabet) {
  json out = json::object();
  for (const auto& [w, c] : f.coef) out[format_word(w, alphabet, " ")] = c;
  return out;
}

inline std::string poly_string(const HomogeneousPoly& f, const Alphabet& alphabet, unsigned p) {
  if (f.zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : f.coef) {
    std::string coeff = signed_coeff(c, p);
    bool neg = coeff[0] == '-';
    std::string mag = neg ? coeff.substr(1) : coeff;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (mag != "1") out += mag + "*";
    out += format_word(w, alphabet);
    first = false;
  }
  return out;
}

inline json oplog_json(const OpLog& log) {
  json out = json::array();
  for (const auto& op : log) {
    switch (op.kind) {
      case RowOp::Kind::Swap: out.push_back({{"op", "swap"}, {"s", op.s + 1}, {"t", op.t + 1}}); break;
      case RowOp::Kind::Scale:
        out.push_back({{"op", "scale"}, {"s", op.s + 1}, {"k", op.k}});
        break;
      case RowOp::Kind::AddMultiple:
        out.push_back({{"op", "add-multiple"}, {"s", op.s + 1}, {"t", op.t + 1}, {"k", op.k}});
        break;
    }
  }
  return out;
}

inline json certificate_json(const MildnessCertificate& cert, const Alphabet& alphabet) {
  json out;
  out["order"] = cert.order_description;
  out["degree"] = cert.degree;
  json pivots = json::array();
  for (const auto& w : cert.pivots) pivots.push_back(word_json(w, alphabet));
  out["pivots"] = pivots;
  json forms = json::array();
  for (const auto& f : cert.initial_forms) forms.push_back(poly_json(f, alphabet));
  out["initial_forms"] = forms;
  json relators = json::array();
  for (const auto& r : cert.transformed_relators) relators.push_back(unparse(r, alphabet));
  out["transformed_relators"] = relators;
  out["row_operations"] = oplog_json(cert.log);
  out["checks"] = {{"combinatorially_free", cert.comb_free_checked},
                   {"closure", cert.closure_checked},
                   {"rank", cert.rank_checked}};
  if (cert.oracle_depth) out["oracle_depth"] = *cert.oracle_depth;
  if (!cert.notes.empty()) out["notes"] = cert.notes;
  return out;
}

inline json failure_json(const CriterionFailure& f, const Alphabet& alphabet) {
  json out;
  out["condition"] = f.condition;
  out["detail"] = f.detail;
  if (f.witness_word) out["word"] = word_json(*f.witness_word, alphabet);
  if (f.violation) out["factor"] = word_json(f.violation->factor, alphabet);
  if (!f.relator_combo.empty()) out["relator_combination"] = f.relator_combo;
  return out;
}

}  // namespace mild
