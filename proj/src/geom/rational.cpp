#include "finban/rational.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "finban/errors.hpp"

namespace finban {

std::string to_string(const Rat& r) { return r.get_str(); }

Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto bad = [&]() -> Rat { fail(ErrorKind::MalformedRational, "'" + s + "'"); };
  if (s.empty()) return bad();
  std::size_t slash = s.find('/');
  auto valid_int = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) return bad();
  if (num[0] == '+') num = num.substr(1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) return bad();
  Rat r(n, d);
  r.canonicalize();
  return r;
}

double to_double(const Rat& r) { return r.get_d(); }

Rat rat_abs(const Rat& r) { return sgn(r) < 0 ? Rat(-r) : r; }

std::strong_ordering compare(const Rat& a, const Rat& b) {
  int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

RatVec zeros(std::size_t n) { return RatVec(n, Rat(0)); }

RatVec unit(std::size_t n, std::size_t k) {
  RatVec v(n, Rat(0));
  v.at(k) = 1;
  return v;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimMismatch, "dot of vectors of sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimMismatch, "add");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimMismatch, "sub");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RatVec scale(const RatVec& a, const Rat& s) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

RatVec neg(const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_zero(const RatVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return sgn(x) == 0; });
}

bool lex_less(const RatVec& a, const RatVec& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

bool lex_positive(const RatVec& a) {
  for (const auto& x : a)
    if (sgn(x) != 0) return sgn(x) > 0;
  return false;
}

RatVec primitive(const RatVec& a) {
  mpz_class l = 1;
  for (const auto& x : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> ints(a.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ints[i] = a[i].get_num() * (l / a[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  RatVec r(a.size());
  if (g == 0) return zeros(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(ints[i] / g);
  return r;
}

std::optional<Rat> parallel_ratio(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimMismatch, "parallel_ratio");
  std::optional<Rat> s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(b[i]) == 0) {
      if (sgn(a[i]) != 0) return std::nullopt;
      continue;
    }
    Rat q = a[i] / b[i];
    if (!s) s = q;
    else if (*s != q) return std::nullopt;
  }
  if (!s) return std::nullopt;  // b == 0
  return s;
}

std::string to_string(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

RatVec parse_vec(std::string_view text) {
  RatVec v;
  std::string s(text);
  std::size_t pos = 0;
  while (true) {
    std::size_t end = s.find(',', pos);
    std::string item = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    v.push_back(parse_rat(item));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return v;
}

void sort_unique(std::vector<RatVec>& vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

}  // namespace finban
