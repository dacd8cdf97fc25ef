#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qtoric/git_model.hpp"

namespace qtoric {

// A polynomial p(c_1(L_eta_1), ..., c_1(L_eta_m)) in first Chern classes of
// characters. Variables are kept distinct even when two names denote the
// same character.
struct CharPoly {
  std::vector<std::vector<Integer>> characters;
  std::vector<std::string> names;
  std::map<std::vector<int>, Rational> terms;  // exponent per variable -> coefficient

  static CharPoly constant(const Rational& c) {
    CharPoly p;
    if (c != 0) p.terms[{}] = c;
    return p;
  }
  static CharPoly variable(std::string name, std::vector<Integer> eta) {
    CharPoly p;
    p.names.push_back(std::move(name));
    p.characters.push_back(std::move(eta));
    p.terms[{1}] = 1;
    return p;
  }
};

struct Insertion {
  std::string variable;  // t_i
  CharPoly poly;         // p_i
};

struct TInsertion {
  std::vector<Insertion> insertions;
  int t_order = 1;
};

namespace detail {

// Polynomials over a shared variable table, used while parsing.
class PolyParser {
 public:
  PolyParser(std::string_view text, const GitPresentation& p) : text_(text), p_(p) {}

  CharPoly parse() {
    auto terms = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    CharPoly out;
    out.characters = characters_;
    out.names = names_;
    for (auto& [k, c] : terms) {
      auto key = k;
      key.resize(names_.size(), 0);
      out.terms[key] += c;
    }
    std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

 private:
  using Terms = std::map<std::vector<int>, Rational>;

  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("bad insertion polynomial '" + std::string(text_) + "': " + why);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Terms add(Terms a, const Terms& b, const Rational& sign) {
    for (const auto& [k, c] : b) {
      a[k] += sign * c;
      if (a[k] == 0) a.erase(k);
    }
    return a;
  }
  static Terms mul(const Terms& a, const Terms& b) {
    Terms out;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b) {
        std::vector<int> k(std::max(ka.size(), kb.size()), 0);
        for (std::size_t i = 0; i < ka.size(); ++i) k[i] += ka[i];
        for (std::size_t i = 0; i < kb.size(); ++i) k[i] += kb[i];
        out[k] += ca * cb;
        if (out[k] == 0) out.erase(k);
      }
    return out;
  }
  static std::optional<Rational> as_constant(const Terms& t) {
    if (t.empty()) return Rational(0);
    if (t.size() != 1) return std::nullopt;
    const auto& [k, c] = *t.begin();
    for (int e : k)
      if (e != 0) return std::nullopt;
    return c;
  }

  Terms expr() {
    Terms acc = term();
    for (;;) {
      if (accept('+'))
        acc = add(std::move(acc), term(), 1);
      else if (accept('-'))
        acc = add(std::move(acc), term(), -1);
      else
        return acc;
    }
  }
  Terms term() {
    Terms acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = mul(acc, unary());
      } else if (accept('/')) {
        auto d = as_constant(unary());
        if (!d || *d == 0) fail("division only by a nonzero constant");
        for (auto& [_, c] : acc) c /= *d;
      } else {
        return acc;
      }
    }
  }
  Terms unary() {
    if (accept('-')) return mul({{{}, Rational(-1)}}, unary());
    if (accept('+')) return unary();
    return power();
  }
  Terms power() {
    Terms base = atom();
    if (!accept('^')) return base;
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a nonnegative integer");
    int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    Terms out{{{}, Rational(1)}};
    for (int i = 0; i < e; ++i) out = mul(out, base);
    return out;
  }
  Terms atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Terms t = expr();
      if (!accept(')')) fail("missing ')'");
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return {{{}, Rational(Integer(std::string(text_.substr(start, pos_ - start))))}};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      std::vector<Integer> eta;
      if (name == "L" && accept('(')) {
        name += "(";
        for (;;) {
          skip_ws();
          std::size_t s = pos_;
          if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
          if (s == pos_) fail("character components must be integers");
          std::string digits(text_.substr(s, pos_ - s));
          eta.emplace_back(digits);
          name += digits;
          if (accept(')')) break;
          if (!accept(',')) fail("expected ',' in character");
          name += ",";
        }
        name += ")";
        if (eta.size() != static_cast<std::size_t>(p_.rank)) fail("character " + name + " has wrong rank");
      } else {
        eta = resolve(name);
      }
      std::size_t idx = variable(name, std::move(eta));
      std::vector<int> k(idx + 1, 0);
      k[idx] = 1;
      return {{k, Rational(1)}};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // H<i> -> e_i, D<rho> -> A_rho (1-based), a ray name -> its charge, H -> e_1 when r = 1.
  std::vector<Integer> resolve(const std::string& name) const {
    auto index_after = [&](char prefix) -> std::optional<int> {
      if (name.size() < 2 || name[0] != prefix) return std::nullopt;
      for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      return std::stoi(name.substr(1));
    };
    if (name == "H" && p_.rank == 1) return {Integer(1)};
    if (auto i = index_after('H'); i && *i >= 1 && *i <= p_.rank) {
      std::vector<Integer> e(static_cast<std::size_t>(p_.rank), 0);
      e[static_cast<std::size_t>(*i - 1)] = 1;
      return e;
    }
    if (auto i = index_after('D'); i && *i >= 1 && *i <= p_.n_rays) return p_.character_of_ray(*i - 1);
    for (int rho = 0; rho < p_.n_rays; ++rho)
      if (p_.ray_names[static_cast<std::size_t>(rho)] == name) return p_.character_of_ray(rho);
    fail("unknown character '" + name + "'");
  }

  std::size_t variable(const std::string& name, std::vector<Integer> eta) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    names_.push_back(name);
    characters_.push_back(std::move(eta));
    return names_.size() - 1;
  }

  std::string_view text_;
  const GitPresentation& p_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<Integer>> characters_;
};

}  // namespace detail

// Grammar: sums and products of integers, symbols H<i>, D<rho>, ray names,
// L(a_1,...,a_r); '^' with integer exponents; '/' by constants.
inline CharPoly parse_char_poly(std::string_view text, const GitPresentation& p) {
  return detail::PolyParser(text, p).parse();
}

// "NAME:POLY"
inline Insertion parse_insertion(std::string_view text, const GitPresentation& p) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) throw InputError("insertion must look like NAME:POLY");
  return {std::string(text.substr(0, colon)), parse_char_poly(text.substr(colon + 1), p)};
}

}  // namespace qtoric
