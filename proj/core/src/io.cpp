// Copyright 2026 The ultragas Authors
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

#include "ultragas/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace ultragas {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return p;
}

Rational parse_decimal(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = body.substr(e + 1);
    if (!exp_text.empty() && exp_text[0] == '+') exp_text.remove_prefix(1);
    const auto [end, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || end != exp_text.data() + exp_text.size()) {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    body = body.substr(0, e);
  }
  std::string digits;
  if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(body)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    digits = std::string(body);
  }
  if (digits.empty()) digits = "0";
  if (exponent > 100000 || exponent < -100000) {
    throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
  }
  Rational value(mpz_class(digits, 10));
  if (exponent >= 0) {
    value *= pow10(exponent);
  } else {
    value /= pow10(-exponent);
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

using Entry = std::variant<Rational, Complex>;

Entry entry_from_json(const Json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.dump());
  if (v.is_number_float()) return parse_decimal(v.dump());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Complex(v[0].get<double>(), v[1].get<double>());
  }
  throw std::invalid_argument("malformed value for " + where);
}

Complex as_complex(const Entry& e) {
  if (const auto* r = std::get_if<Rational>(&e)) return {r->get_d(), 0.0};
  return std::get<Complex>(e);
}

}  // namespace

Rational parse_rational(std::string_view raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty number");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    const bool negative = !num.empty() && num[0] == '-';
    const std::string num_digits = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? num.substr(1) : num;
    if (!all_digits(num_digits) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational '" + text + "'");
    }
    const mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    Rational r(mpz_class(num_digits, 10), d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  return parse_decimal(text);
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

ExponentSpec spec_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("spec must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw std::invalid_argument("spec requires an integer field \"n\"");
  }
  const int n = doc["n"].get<int>();
  if (n < 1) throw std::invalid_argument("spec order n must be positive");
  const bool has_s = doc.contains("s"), has_charges = doc.contains("charges");
  if (has_s == has_charges) {
    throw std::invalid_argument("spec requires exactly one of \"s\" and \"charges\"");
  }
  if (has_charges) {
    const Json& list = doc["charges"];
    if (!list.is_array() || static_cast<int>(list.size()) != n) {
      throw std::invalid_argument("\"charges\" must list n values");
    }
    if (!doc.contains("beta")) throw std::invalid_argument("charge specs require \"beta\"");
    std::vector<Rational> charges;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Entry e = entry_from_json(list[i], "charge " + std::to_string(i + 1));
      if (!std::holds_alternative<Rational>(e)) throw std::invalid_argument("charges must be real");
      charges.push_back(std::get<Rational>(e));
    }
    const Entry beta = entry_from_json(doc["beta"], "beta");
    if (const auto* r = std::get_if<Rational>(&beta)) return ExponentSpec::from_charges(charges, *r);
    return ExponentSpec::from_charges(charges, std::get<Complex>(beta));
  }
  const Json& s = doc["s"];
  if (!s.is_object()) throw std::invalid_argument("\"s\" must be an object keyed by \"i,j\"");
  std::vector<std::optional<Entry>> entries(static_cast<std::size_t>(n) * (n - 1) / 2);
  auto index = [n](int i, int j) { return static_cast<std::size_t>((i - 1) * (2 * n - i) / 2 + (j - i - 1)); };
  bool complex = false;
  for (const auto& [key, value] : s.items()) {
    const auto comma = key.find(',');
    int i = 0, j = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("");
      i = std::stoi(key.substr(0, comma));
      j = std::stoi(key.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed pair key \"" + key + "\"");
    }
    if (i > j) std::swap(i, j);
    if (i < 1 || j > n || i == j) throw std::invalid_argument("pair key \"" + key + "\" out of range");
    auto& slot = entries[index(i, j)];
    if (slot) throw std::invalid_argument("duplicate pair key \"" + key + "\"");
    slot = entry_from_json(value, "pair " + key);
    complex |= std::holds_alternative<Complex>(*slot);
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (!entries[index(i, j)]) {
        throw std::invalid_argument("missing pair \"" + std::to_string(i) + "," + std::to_string(j) + "\"");
      }
    }
  }
  if (complex) {
    std::vector<Complex> values;
    for (const auto& e : entries) values.push_back(as_complex(*e));
    return ExponentSpec::direct(n, std::move(values));
  }
  std::vector<Rational> values;
  for (const auto& e : entries) values.push_back(std::get<Rational>(*e));
  return ExponentSpec::direct(n, std::move(values));
}

ExponentSpec read_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path.string() + ": " + e.what());
  }
  return spec_from_json(doc);
}

namespace {

Json poly_terms(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& [mono, coeff] : p.terms()) {
    terms.push_back(Json::array({coeff.get_str(), mono.first, mono.second}));
  }
  return terms;
}

}  // namespace

Json to_json(const ScalarValue& value) {
  switch (value.kind()) {
    case ScalarKind::exact:
      return value.to_string();
    case ScalarKind::symbolic: {
      const auto [num, den] = value.symbolic().as_polynomial_ratio();
      return Json{{"num", poly_terms(num)}, {"den", poly_terms(den)}};
    }
    case ScalarKind::complex: {
      const Complex z = value.complex();
      if (z.imag() == 0.0) return z.real();
      return Json::array({z.real(), z.imag()});
    }
  }
  return nullptr;
}

Json to_json(const ReducedChain& chain) {
  Json branches = Json::array();
  for (const Branch& b : chain.sorted_branches()) {
    branches.push_back(Json{{"members", b.members.members()}, {"degree", b.degree}});
  }
  return Json{{"branches", std::move(branches)}};
}

}  // namespace ultragas
