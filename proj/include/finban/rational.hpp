#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finban {

// GMP rationals are kept canonical (lowest terms, positive denominator) by
// mpq_class itself, which is exactly the invariant we need.
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

std::string to_string(const Rat& r);
Rat parse_rat(std::string_view text);
double to_double(const Rat& r);
Rat rat_abs(const Rat& r);
std::strong_ordering compare(const Rat& a, const Rat& b);

RatVec zeros(std::size_t n);
RatVec unit(std::size_t n, std::size_t k);
Rat dot(const RatVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const RatVec& a, const Rat& s);
RatVec neg(const RatVec& a);
bool is_zero(const RatVec& a);

// Lexicographic on coordinates; the canonical order for every vertex and
// facet list in the library.
bool lex_less(const RatVec& a, const RatVec& b);
bool lex_positive(const RatVec& a);

// Positive multiple of `a` with coprime integer entries.
RatVec primitive(const RatVec& a);

// If a = s*b for some rational s, returns s (b must be nonzero).
std::optional<Rat> parallel_ratio(const RatVec& a, const RatVec& b);

std::string to_string(const RatVec& v);
RatVec parse_vec(std::string_view text);  // "1,-1/2,3"

void sort_unique(std::vector<RatVec>& vs);

}  // namespace finban
