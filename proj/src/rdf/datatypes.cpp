#include "graphmux/rdf/datatypes.hpp"

#include <cctype>
#include <cstdlib>

#include "graphmux/rdf/namespaces.hpp"

namespace graphmux::rdf {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool valid_integer(const std::string& s) {
  std::string_view v = s;
  if (!v.empty() && (v[0] == '+' || v[0] == '-')) v.remove_prefix(1);
  return all_digits(v);
}

bool valid_decimal(const std::string& s) {
  std::string_view v = s;
  if (!v.empty() && (v[0] == '+' || v[0] == '-')) v.remove_prefix(1);
  auto dot = v.find('.');
  if (dot == std::string_view::npos) return all_digits(v);
  std::string_view intp = v.substr(0, dot);
  std::string_view frac = v.substr(dot + 1);
  if (intp.empty() && frac.empty()) return false;
  if (!intp.empty() && !all_digits(intp)) return false;
  if (!frac.empty() && !all_digits(frac)) return false;
  return true;
}

bool valid_double(const std::string& s) {
  if (s == "INF" || s == "-INF" || s == "NaN") return true;
  std::string_view v = s;
  auto e = v.find_first_of("eE");
  if (e == std::string_view::npos) return valid_decimal(s);
  std::string mant(v.substr(0, e));
  std::string expo(v.substr(e + 1));
  return valid_decimal(mant) && valid_integer(expo);
}

bool valid_date_part(std::string_view v, std::size_t& pos) {
  // YYYY-MM-DD with basic range checks; proleptic calendar subtleties are out
  // of subset (no negative years, no leap-day validation).
  if (v.size() < pos + 10) return false;
  for (std::size_t i = 0; i < 10; ++i) {
    char c = v[pos + i];
    if (i == 4 || i == 7) {
      if (c != '-') return false;
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  int month = (v[pos + 5] - '0') * 10 + (v[pos + 6] - '0');
  int day = (v[pos + 8] - '0') * 10 + (v[pos + 9] - '0');
  pos += 10;
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

bool valid_time_part(std::string_view v, std::size_t& pos) {
  if (v.size() < pos + 8) return false;
  for (std::size_t i = 0; i < 8; ++i) {
    char c = v[pos + i];
    if (i == 2 || i == 5) {
      if (c != ':') return false;
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  int hh = (v[pos] - '0') * 10 + (v[pos + 1] - '0');
  int mm = (v[pos + 3] - '0') * 10 + (v[pos + 4] - '0');
  int ss = (v[pos + 6] - '0') * 10 + (v[pos + 7] - '0');
  pos += 8;
  if (hh > 23 || mm > 59 || ss > 59) return false;
  if (pos < v.size() && v[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    while (pos < v.size() && std::isdigit(static_cast<unsigned char>(v[pos]))) ++pos;
    if (pos == start) return false;
  }
  return true;
}

bool valid_timezone(std::string_view v, std::size_t& pos) {
  if (pos >= v.size()) return true;
  if (v[pos] == 'Z') {
    ++pos;
    return true;
  }
  if (v[pos] == '+' || v[pos] == '-') {
    if (v.size() < pos + 6) return false;
    bool ok = std::isdigit(static_cast<unsigned char>(v[pos + 1])) &&
              std::isdigit(static_cast<unsigned char>(v[pos + 2])) && v[pos + 3] == ':' &&
              std::isdigit(static_cast<unsigned char>(v[pos + 4])) &&
              std::isdigit(static_cast<unsigned char>(v[pos + 5]));
    pos += 6;
    return ok;
  }
  return true;
}

bool valid_date(const std::string& s) {
  std::string_view v = s;
  std::size_t pos = 0;
  if (!valid_date_part(v, pos)) return false;
  return pos == v.size();
}

bool valid_datetime(const std::string& s) {
  std::string_view v = s;
  std::size_t pos = 0;
  if (!valid_date_part(v, pos)) return false;
  if (pos >= v.size() || v[pos] != 'T') return false;
  ++pos;
  if (!valid_time_part(v, pos)) return false;
  if (!valid_timezone(v, pos)) return false;
  return pos == v.size();
}

}  // namespace

bool is_numeric_datatype(std::string_view datatype_iri) {
  return datatype_iri == ns::kXsdInteger || datatype_iri == ns::kXsdDecimal ||
         datatype_iri == ns::kXsdDouble;
}

bool is_comparable_datatype(std::string_view datatype_iri) {
  return is_numeric_datatype(datatype_iri) || datatype_iri == ns::kXsdDate ||
         datatype_iri == ns::kXsdDateTime || datatype_iri == ns::kXsdString;
}

std::optional<long double> parse_numeric(const std::string& lexical) {
  if (lexical.empty()) return std::nullopt;
  const char* begin = lexical.c_str();
  char* end = nullptr;
  long double v = std::strtold(begin, &end);
  if (end != begin + lexical.size()) return std::nullopt;
  return v;
}

bool is_valid_lexical(std::string_view datatype_iri, const std::string& lexical) {
  if (datatype_iri == ns::kXsdInteger) return valid_integer(lexical);
  if (datatype_iri == ns::kXsdDecimal) return valid_decimal(lexical);
  if (datatype_iri == ns::kXsdDouble) return valid_double(lexical);
  if (datatype_iri == ns::kXsdDate) return valid_date(lexical);
  if (datatype_iri == ns::kXsdDateTime) return valid_datetime(lexical);
  if (datatype_iri == ns::kXsdBoolean) {
    return lexical == "true" || lexical == "false" || lexical == "1" || lexical == "0";
  }
  return true;
}

std::optional<int> compare_literal_values(const Term& a, const Term& b) {
  if (!a.is_literal() || !b.is_literal()) return std::nullopt;
  if (is_numeric_datatype(a.datatype()) && is_numeric_datatype(b.datatype())) {
    auto va = parse_numeric(a.value());
    auto vb = parse_numeric(b.value());
    if (!va || !vb) return std::nullopt;
    if (*va < *vb) return -1;
    if (*va > *vb) return 1;
    return 0;
  }
  int c = a.value().compare(b.value());
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace graphmux::rdf
