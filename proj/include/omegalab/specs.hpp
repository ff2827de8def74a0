#pragma once

#include <charconv>
#include <string>
#include <vector>

#include "omegalab/constructions.hpp"
#include "omegalab/core.hpp"
#include "omegalab/rigidity.hpp"
#include "omegalab/sets.hpp"

// The spec mini-language: every set, domain, and candidate family the CLI
// accepts is a short string, and every object built here names itself by a
// string that parses back to it.
//
// Grammar:   name(:key=value(,key=value)*)?
// Values may be nested specs. The keys `of` and `file` consume the rest of
// the string, so nested set specs always come last; domain specs delimit
// themselves with parentheses: calibrated(<setspec>), bounded(<setspec>).

namespace omegalab {

namespace detail {

struct KeyValue {
  std::string key;
  std::size_t key_pos;
  std::size_t value_begin;
  std::size_t value_end;
};

inline bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
}

inline Nat parse_nat(const std::string& text, std::size_t begin, std::size_t end) {
  Nat value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data() + begin, text.data() + end, value);
  if (ec != std::errc() || ptr != text.data() + end || begin == end) {
    throw SpecParseError("expected a natural number", begin);
  }
  return value;
}

// Splits `text[pos..end)` into key=value pairs at top-level commas. Keys
// listed as greedy swallow everything up to `end`.
inline std::vector<KeyValue> parse_key_values(const std::string& text, std::size_t pos,
                                              std::size_t end,
                                              const std::vector<std::string>& greedy_keys) {
  std::vector<KeyValue> pairs;
  if (pos >= end) return pairs;
  if (text[pos] != ':') throw SpecParseError("expected ':' before arguments", pos);
  ++pos;
  while (pos < end) {
    const std::size_t key_pos = pos;
    while (pos < end && text[pos] != '=') ++pos;
    if (pos == end) throw SpecParseError("expected '=' after key", key_pos);
    std::string key = text.substr(key_pos, pos - key_pos);
    if (key.empty()) throw SpecParseError("empty key", key_pos);
    ++pos;  // past '='
    const std::size_t value_begin = pos;
    bool greedy = false;
    for (const auto& g : greedy_keys) {
      if (key == g) {
        greedy = true;
        break;
      }
    }
    std::size_t value_end;
    if (greedy) {
      value_end = end;
      pos = end;
    } else {
      int depth = 0;
      while (pos < end) {
        const char c = text[pos];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) break;
        ++pos;
      }
      value_end = pos;
      if (pos < end) ++pos;  // past ','
    }
    if (value_begin == value_end) throw SpecParseError("empty value for key '" + key + "'", value_begin);
    for (const auto& existing : pairs) {
      if (existing.key == key) throw SpecParseError("duplicate key '" + key + "'", key_pos);
    }
    pairs.push_back(KeyValue{std::move(key), key_pos, value_begin, value_end});
  }
  return pairs;
}

inline const KeyValue& require_key(const std::vector<KeyValue>& pairs, const std::string& key,
                                   std::size_t name_pos) {
  for (const auto& kv : pairs) {
    if (kv.key == key) return kv;
  }
  throw SpecParseError("missing key '" + key + "'", name_pos);
}

inline void reject_unknown_keys(const std::vector<KeyValue>& pairs,
                                const std::vector<std::string>& known) {
  for (const auto& kv : pairs) {
    bool ok = false;
    for (const auto& k : known) {
      if (kv.key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw SpecParseError("unexpected key '" + kv.key + "'", kv.key_pos);
  }
}

inline std::size_t read_name(const std::string& text, std::size_t begin, std::size_t end) {
  std::size_t pos = begin;
  while (pos < end && is_name_char(text[pos])) ++pos;
  if (pos == begin) throw SpecParseError("expected a builder name", begin);
  return pos;
}

inline OmegaSet parse_set_impl(const std::string& text, std::size_t begin, std::size_t end);

inline ComputableDomain parse_domain_impl(const std::string& text, std::size_t begin,
                                          std::size_t end) {
  const std::size_t name_end = read_name(text, begin, end);
  const std::string name = text.substr(begin, name_end - begin);
  if (name == "pyramid" || name == "full") {
    if (name_end != end) throw SpecParseError("unexpected arguments after '" + name + "'", name_end);
    return name == "pyramid" ? pyramid_domain() : full_domain();
  }
  if (name == "calibrated" || name == "bounded") {
    if (name_end >= end || text[name_end] != '(') {
      throw SpecParseError("expected '(' after '" + name + "'", name_end);
    }
    if (text[end - 1] != ')') throw SpecParseError("expected ')'", end - 1);
    const OmegaSet s = parse_set_impl(text, name_end + 1, end - 1);
    return name == "calibrated" ? calibrated_domain(s) : bounded_calibrated_domain(s);
  }
  throw SpecParseError("unknown domain builder '" + name + "'", begin);
}

inline std::vector<Nat> parse_nat_list(const std::string& text, std::size_t begin,
                                       std::size_t end) {
  if (begin >= end || text[begin] != '[') throw SpecParseError("expected '['", begin);
  if (text[end - 1] != ']') throw SpecParseError("expected ']'", end - 1);
  std::vector<Nat> values;
  std::size_t pos = begin + 1;
  const std::size_t close = end - 1;
  while (pos < close) {
    std::size_t item_end = pos;
    while (item_end < close && text[item_end] != ',') ++item_end;
    values.push_back(parse_nat(text, pos, item_end));
    pos = item_end < close ? item_end + 1 : close;
    if (item_end + 1 == close) throw SpecParseError("trailing comma in list", item_end);
  }
  return values;
}

inline OmegaSet parse_set_impl(const std::string& text, std::size_t begin, std::size_t end) {
  const std::size_t name_end = read_name(text, begin, end);
  const std::string name = text.substr(begin, name_end - begin);

  const auto no_args = [&](OmegaSet set) {
    if (name_end != end) throw SpecParseError("unexpected arguments after '" + name + "'", name_end);
    return set;
  };

  if (name == "evens") return no_args(evens());
  if (name == "odds") return no_args(odds());
  if (name == "primes") return no_args(primes());
  if (name == "empty") return no_args(empty_set());
  if (name == "full") return no_args(full_set());

  if (name == "random") {
    const auto pairs = parse_key_values(text, name_end, end, {});
    reject_unknown_keys(pairs, {"seed"});
    const auto& seed = require_key(pairs, "seed", begin);
    return seeded_random_set(parse_nat(text, seed.value_begin, seed.value_end));
  }
  if (name == "explicit") {
    if (name_end >= end || text[name_end] != ':') {
      throw SpecParseError("expected ':[...]' after 'explicit'", name_end);
    }
    return explicit_set(parse_nat_list(text, name_end + 1, end));
  }
  if (name == "complement") {
    const auto pairs = parse_key_values(text, name_end, end, {"of"});
    reject_unknown_keys(pairs, {"of"});
    const auto& of = require_key(pairs, "of", begin);
    return complement(parse_set_impl(text, of.value_begin, of.value_end));
  }
  if (name == "thicken") {
    const auto pairs = parse_key_values(text, name_end, end, {"of"});
    reject_unknown_keys(pairs, {"k", "of"});
    const auto& k = require_key(pairs, "k", begin);
    const auto& of = require_key(pairs, "of", begin);
    return thicken(parse_set_impl(text, of.value_begin, of.value_end),
                   parse_nat(text, k.value_begin, k.value_end));
  }
  if (name == "pullback") {
    const auto pairs = parse_key_values(text, name_end, end, {"of"});
    reject_unknown_keys(pairs, {"domain", "of"});
    const auto& domain = require_key(pairs, "domain", begin);
    const auto& of = require_key(pairs, "of", begin);
    return pullback(parse_domain_impl(text, domain.value_begin, domain.value_end),
                    parse_set_impl(text, of.value_begin, of.value_end));
  }
  if (name == "column") {
    const auto pairs = parse_key_values(text, name_end, end, {});
    reject_unknown_keys(pairs, {"k"});
    const auto& k = require_key(pairs, "k", begin);
    return disjoint_family(parse_nat(text, k.value_begin, k.value_end));
  }
  throw SpecParseError("unknown set builder '" + name + "'", begin);
}

}  // namespace detail

inline OmegaSet parse_set_spec(const std::string& text) {
  if (text.empty()) throw SpecParseError("empty set spec", 0);
  return detail::parse_set_impl(text, 0, text.size());
}

inline ComputableDomain parse_domain_spec(const std::string& text) {
  if (text.empty()) throw SpecParseError("empty domain spec", 0);
  return detail::parse_domain_impl(text, 0, text.size());
}

inline GeneratorSpec parse_generator_spec(const std::string& text) {
  if (text.empty()) throw SpecParseError("empty generator spec", 0);
  const std::size_t end = text.size();
  const std::size_t name_end = detail::read_name(text, 0, end);
  const std::string name = text.substr(0, name_end);
  if (name == "affine") {
    const auto pairs = detail::parse_key_values(text, name_end, end, {});
    detail::reject_unknown_keys(pairs, {"amax", "bmax"});
    const auto& amax = detail::require_key(pairs, "amax", 0);
    const auto& bmax = detail::require_key(pairs, "bmax", 0);
    return AffineGridSpec{detail::parse_nat(text, amax.value_begin, amax.value_end),
                          detail::parse_nat(text, bmax.value_begin, bmax.value_end)};
  }
  if (name == "inj") {
    const auto pairs = detail::parse_key_values(text, name_end, end, {});
    detail::reject_unknown_keys(pairs, {"seed", "range"});
    const auto& seed = detail::require_key(pairs, "seed", 0);
    const auto& range = detail::require_key(pairs, "range", 0);
    return InjectionBatchSpec{detail::parse_nat(text, seed.value_begin, seed.value_end),
                              detail::parse_nat(text, range.value_begin, range.value_end)};
  }
  if (name == "adversary") {
    const auto pairs = detail::parse_key_values(text, name_end, end, {});
    detail::reject_unknown_keys(pairs, {"k"});
    const auto& k = detail::require_key(pairs, "k", 0);
    return AdversarySpec{detail::parse_nat(text, k.value_begin, k.value_end)};
  }
  if (name == "table") {
    const auto pairs = detail::parse_key_values(text, name_end, end, {"file"});
    detail::reject_unknown_keys(pairs, {"file"});
    const auto& file = detail::require_key(pairs, "file", 0);
    return TableFileSpec{text.substr(file.value_begin, file.value_end - file.value_begin)};
  }
  throw SpecParseError("unknown generator '" + name + "'", 0);
}

}  // namespace omegalab
