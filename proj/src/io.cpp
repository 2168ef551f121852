// Copyright 2026 The lcswitch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lcswitch/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <json.hpp>

#include "lcswitch/errors.hpp"

namespace lcs {

using nlohmann::json;

namespace {

// Forward iterator over the text that publishes how far the parser has read,
// so parse callbacks can be tied to source positions.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, const char* base, std::size_t* furthest) : p_(p), base_(base), furthest_(furthest) {}

  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    if (furthest_) *furthest_ = static_cast<std::size_t>(p_ - base_);
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator t = *this;
    ++*this;
    return t;
  }
  friend bool operator==(const CountingIterator& a, const CountingIterator& b) { return a.p_ == b.p_; }
  friend bool operator!=(const CountingIterator& a, const CountingIterator& b) { return a.p_ != b.p_; }

 private:
  const char* p_ = nullptr;
  const char* base_ = nullptr;
  std::size_t* furthest_ = nullptr;
};

struct Position {
  int line = 1;
  int column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position pos;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

// A parsed document plus the source offsets of objects and values at each
// JSON pointer path, recorded as the parser reaches them.
class Located {
 public:
  explicit Located(std::string_view text) : text_(text) {
    std::size_t furthest = 0;
    struct Frame {
      std::string path;
      bool array;
      std::size_t count;
    };
    std::vector<Frame> stack;
    std::string key;
    auto child = [&]() -> std::string {
      if (stack.empty()) return "";
      Frame& f = stack.back();
      return f.path + "/" + (f.array ? std::to_string(f.count++) : key);
    };
    json::parser_callback_t cb = [&](int, json::parse_event_t ev, json& parsed) {
      const std::size_t at = furthest > 0 ? furthest - 1 : 0;
      switch (ev) {
        case json::parse_event_t::key:
          key = parsed.get<std::string>();
          break;
        case json::parse_event_t::object_start:
        case json::parse_event_t::array_start: {
          std::string p = child();
          offsets_[p] = at;
          stack.push_back({std::move(p), ev == json::parse_event_t::array_start, 0});
          break;
        }
        case json::parse_event_t::object_end:
        case json::parse_event_t::array_end:
          stack.pop_back();
          break;
        case json::parse_event_t::value:
          if (!stack.empty()) offsets_[child()] = at;
          break;
      }
      return true;
    };
    CountingIterator first(text.data(), text.data(), &furthest), last(text.data() + text.size(), text.data(), nullptr);
    try {
      doc_ = json::parse(first, last, cb);
    } catch (const json::parse_error& e) {
      Position p = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
      std::string msg = e.what();
      if (auto k = msg.find("syntax error"); k != std::string::npos) msg = msg.substr(k);
      throw ParseError(msg, p.line, p.column);
    }
  }

  const json& doc() const { return doc_; }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    // Nearest recorded ancestor.
    std::string p = pointer;
    while (true) {
      if (auto it = offsets_.find(p); it != offsets_.end()) {
        Position pos = position_of(text_, it->second);
        throw ParseError(message, pos.line, pos.column);
      }
      auto slash = p.rfind('/');
      if (slash == std::string::npos || p.empty()) break;
      p = p.substr(0, slash);
    }
    throw ParseError(message, 1, 1);
  }

 private:
  std::string_view text_;
  json doc_;
  std::map<std::string, std::size_t> offsets_;
};

const json& member(const Located& src, const json& obj, const std::string& pointer, const char* key) {
  if (!obj.is_object()) src.fail(pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) src.fail(pointer, std::string("missing field '") + key + "'");
  return *it;
}

int as_int(const Located& src, const json& v, const std::string& pointer) {
  if (!v.is_number_integer()) src.fail(pointer, "expected an integer");
  return v.get<int>();
}

std::string as_string(const Located& src, const json& v, const std::string& pointer) {
  if (!v.is_string()) src.fail(pointer, "expected a string");
  return v.get<std::string>();
}

Scenario scenario_from(const Located& src, const json& v, const std::string& pointer) {
  try {
    if (v.is_string()) return Scenario::parse(v.get<std::string>());
    if (!v.is_array()) src.fail(pointer, "scenario must be a party list or a description string");
    std::vector<Party> parties;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string p = pointer + "/" + std::to_string(i);
      const json& e = v[i];
      Party party;
      party.name = as_string(src, member(src, e, p, "name"), p + "/name");
      party.outcome_var = as_string(src, member(src, e, p, "outcome"), p + "/outcome");
      party.outcomes = as_int(src, member(src, e, p, "outcomes"), p + "/outcomes");
      party.settings = e.contains("settings") ? as_int(src, e["settings"], p + "/settings") : 1;
      party.setting_var = e.contains("setting") ? as_string(src, e["setting"], p + "/setting") : "";
      parties.push_back(std::move(party));
    }
    return Scenario(std::move(parties));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    src.fail(pointer, e.what());
  }
}

std::vector<int> int_list(const Located& src, const json& v, const std::string& pointer, std::size_t length) {
  if (!v.is_array()) src.fail(pointer, "expected an array");
  if (v.size() != length)
    src.fail(pointer, "expected " + std::to_string(length) + " values, found " + std::to_string(v.size()));
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(src, v[i], pointer + "/" + std::to_string(i)));
  return out;
}

AnyCorrelation correlation_from(const Located& src, const json& doc, const std::string& pointer) {
  Scenario sc = scenario_from(src, member(src, doc, pointer, "scenario"), pointer + "/scenario");
  const json& entries = member(src, doc, pointer, "entries");
  if (!entries.is_array()) src.fail(pointer + "/entries", "expected an array of entries");
  const std::size_t np = sc.party_count();
  bool floating = false;
  for (const auto& e : entries)
    if (e.is_object() && e.contains("p") && e["p"].is_number()) floating = true;

  std::vector<ExactCorrelation::Record> exact;
  std::vector<FloatCorrelation::Record> approx;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = pointer + "/entries/" + std::to_string(i);
    const json& e = entries[i];
    std::vector<int> outs = int_list(src, member(src, e, p, "outcomes"), p + "/outcomes", np);
    std::vector<int> sets;
    if (e.contains("settings")) sets = int_list(src, e["settings"], p + "/settings", np);
    else sets.assign(np, 0);
    const json& pv = member(src, e, p, "p");
    if (floating) {
      double x;
      if (pv.is_number()) x = pv.get<double>();
      else {
        try {
          x = to_double(parse_rational(as_string(src, pv, p + "/p")));
        } catch (const ParseError& err) {
          src.fail(p + "/p", err.message());
        }
      }
      approx.push_back({std::move(outs), std::move(sets), x});
    } else {
      try {
        exact.push_back({std::move(outs), std::move(sets), parse_rational(as_string(src, pv, p + "/p"))});
      } catch (const ParseError& err) {
        if (err.line() > 0) throw;
        src.fail(p + "/p", err.message());
      }
    }
  }
  try {
    if (floating) return FloatCorrelation::from_records(sc, approx);
    return ExactCorrelation::from_records(sc, exact);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    src.fail(pointer + "/entries", e.what());
  }
}

template <class T>
json correlation_json(const Correlation<T>& corr) {
  const Scenario& sc = corr.scenario();
  const std::size_t np = sc.party_count();
  json entries = json::array();
  std::vector<int> assign(2 * np);
  for (std::size_t i = 0; i < corr.size(); ++i) {
    sc.decode(i, assign);
    json e{{"outcomes", std::vector<int>(assign.begin(), assign.begin() + static_cast<long>(np))},
           {"settings", std::vector<int>(assign.begin() + static_cast<long>(np), assign.end())}};
    if constexpr (Numeric<T>::exact) e["p"] = to_string(corr[i]);
    else e["p"] = corr[i];
    entries.push_back(std::move(e));
  }
  return json{{"scenario", sc.describe()}, {"entries", std::move(entries)}};
}

double as_number(const Located& src, const json& v, const std::string& pointer) {
  if (!v.is_number()) src.fail(pointer, "expected a number");
  return v.get<double>();
}

std::string format_double(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_complex(std::complex<double> z) {
  if (z.imag() == 0) return format_double(z.real());
  std::string im = format_double(z.imag()) + "i";
  if (z.real() == 0) return im;
  return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + im;
}

}  // namespace

AnyCorrelation read_correlation(std::string_view text) {
  Located src(text);
  return correlation_from(src, src.doc(), "");
}

// One entry per line keeps large tables diffable.
static std::string compact_correlation(const json& doc, const std::string& indent) {
  std::string out = "{\n" + indent + " \"scenario\": " + doc["scenario"].dump() + ",\n" + indent + " \"entries\": [";
  const json& entries = doc["entries"];
  for (std::size_t i = 0; i < entries.size(); ++i) out += (i ? ",\n" : "\n") + indent + "  " + entries[i].dump();
  return out + "\n" + indent + " ]\n" + indent + "}";
}

std::string write_correlation(const ExactCorrelation& corr) {
  return compact_correlation(correlation_json(corr), "") + "\n";
}

std::string write_correlation(const FloatCorrelation& corr) {
  return compact_correlation(correlation_json(corr), "") + "\n";
}

std::complex<double> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  if (s.empty()) throw ParseError("empty complex number");
  auto number = [&](std::string_view part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    double v = 0;
    const char* b = part.data();
    if (*b == '+') ++b;
    auto r = std::from_chars(b, part.data() + part.size(), v);
    if (r.ec != std::errc() || r.ptr != part.data() + part.size())
      throw ParseError("malformed complex number '" + std::string(text) + "'");
    return v;
  };
  if (s.back() != 'i') return {number(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, number(s)};
  return {number(std::string_view(s).substr(0, split)), number(std::string_view(s).substr(split))};
}

SwitchSetup read_setup(std::string_view text) {
  Located src(text);
  const json& doc = src.doc();
  if (!doc.is_object()) src.fail("", "setup must be an object");
  SwitchSetup s;
  auto text_field = [&](const char* key) { return as_string(src, doc[key], std::string("/") + key); };
  try {
    if (doc.contains("variant")) s.variant = parse_variant(text_field("variant"));
    if (doc.contains("postprocess")) s.postprocess = parse_postprocess(text_field("postprocess"));
  } catch (const ParseError& e) {
    src.fail(doc.contains("postprocess") ? "/postprocess" : "/variant", e.message());
  }
  auto kets = [&](const char* key, auto& out) {
    if (!doc.contains(key)) return;
    const std::string p = std::string("/") + key;
    const json& v = doc[key];
    if (!v.is_array() || v.size() != out.size())
      src.fail(p, "expected " + std::to_string(out.size()) + " amplitudes");
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::string q = p + "/" + std::to_string(i);
      try {
        out[i] = v[i].is_number() ? std::complex<double>(v[i].get<double>()) : parse_complex(as_string(src, v[i], q));
      } catch (const ParseError& e) {
        if (e.line() > 0) throw;
        src.fail(q, e.message());
      }
    }
  };
  kets("target", s.target);
  kets("control_bob", s.control_bob);
  auto directions = [&](const char* key, std::array<Direction, 2>& out) {
    if (!doc.contains(key)) return;
    const std::string p = std::string("/") + key;
    const json& v = doc[key];
    if (!v.is_array() || v.size() != 2) src.fail(p, "expected two measurement directions");
    for (std::size_t i = 0; i < 2; ++i) {
      const std::string q = p + "/" + std::to_string(i);
      if (v[i].is_object()) {
        out[i].theta = as_number(src, member(src, v[i], q, "theta"), q + "/theta");
        out[i].phase = v[i].contains("phase") ? as_number(src, v[i]["phase"], q + "/phase") : 0.0;
      } else {
        out[i] = Direction{as_number(src, v[i], q)};
      }
    }
  };
  directions("bob", s.bob);
  directions("charlie", s.charlie);
  return s;
}

std::string write_setup(const SwitchSetup& s) {
  auto dirs = [](const std::array<Direction, 2>& d) {
    json arr = json::array();
    for (const auto& x : d) {
      if (x.phase == 0) arr.push_back(x.theta);
      else arr.push_back(json{{"theta", x.theta}, {"phase", x.phase}});
    }
    return arr;
  };
  json target = json::array(), cb = json::array();
  for (auto z : s.target) target.push_back(format_complex(z));
  for (auto z : s.control_bob) cb.push_back(format_complex(z));
  json doc{{"variant", std::string(to_string(s.variant))},
           {"postprocess", std::string(to_string(s.postprocess))},
           {"target", target},
           {"control_bob", cb},
           {"bob", dirs(s.bob)},
           {"charlie", dirs(s.charlie)}};
  return doc.dump(1) + "\n";
}

HiddenVariableModel read_model(std::string_view text) {
  Located src(text);
  const json& doc = src.doc();
  Rational mu;
  try {
    mu = parse_rational(as_string(src, member(src, doc, "", "mu"), "/mu"));
  } catch (const ParseError& e) {
    if (e.line() > 0) throw;
    src.fail("/mu", e.message());
  }
  auto branch = [&](const char* key) {
    const std::string p = std::string("/") + key;
    AnyCorrelation c = correlation_from(src, member(src, doc, "", key), p);
    if (!std::holds_alternative<ExactCorrelation>(c)) src.fail(p, "model branches must be exact tables");
    return std::get<ExactCorrelation>(std::move(c));
  };
  ExactCorrelation b1 = branch("branch1");
  ExactCorrelation b2 = branch("branch2");
  return HiddenVariableModel{std::move(mu), std::move(b1), std::move(b2)};
}

std::string write_model(const HiddenVariableModel& m) {
  return "{\n \"mu\": " + json(to_string(m.mu)).dump() + ",\n \"branch1\": " +
         compact_correlation(correlation_json(m.branch1), " ") + ",\n \"branch2\": " +
         compact_correlation(correlation_json(m.branch2), " ") + "\n}\n";
}

std::string write_functional(const LinearFunctional& f) {
  json coeffs = json::array();
  for (const auto& c : f.coefficients) coeffs.push_back(to_string(c));
  json doc{{"scenario", f.scenario.describe()}, {"coefficients", coeffs}, {"offset", to_string(f.offset)}};
  return doc.dump() + "\n";
}

LinearFunctional read_functional(std::string_view text) {
  Located src(text);
  const json& doc = src.doc();
  Scenario sc = scenario_from(src, member(src, doc, "", "scenario"), "/scenario");
  const json& coeffs = member(src, doc, "", "coefficients");
  if (!coeffs.is_array() || coeffs.size() != sc.size())
    src.fail("/coefficients", "expected " + std::to_string(sc.size()) + " coefficients");
  auto exact = [&](const json& v, const std::string& pointer) {
    try {
      return parse_rational(as_string(src, v, pointer));
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      src.fail(pointer, e.message());
    }
  };
  RationalVector c(sc.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = exact(coeffs[i], "/coefficients/" + std::to_string(i));
  Rational offset = doc.contains("offset") ? exact(doc["offset"], "/offset") : Rational(0);
  return LinearFunctional(std::move(sc), std::move(c), std::move(offset));
}

std::string read_text_file(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lcs
