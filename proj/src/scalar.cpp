#include "arrfaces/scalar.hpp"

#include <gmp.h>

#include <cctype>
#include <stdexcept>

#include "arrfaces/errors.hpp"

namespace arrfaces {

namespace {

bool is_integer_token(std::string_view t) {
  if (t.empty()) return false;
  size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string t(text);
  if (t.empty()) fail(ErrorCode::ParseError, "empty numeric token");

  if (auto slash = t.find('/'); slash != std::string::npos) {
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
      fail(ErrorCode::ParseError, "bad rational '" + t + "'");
    Scalar q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
      fail(ErrorCode::ParseError, "bad rational '" + t + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
      fail(ErrorCode::ParseError, "zero denominator in '" + t + "'");
    q.canonicalize();
    return q;
  }

  if (auto dot = t.find('.'); dot != std::string::npos) {
    std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) fp = "0";
    if (!is_integer_token(ip) || !is_integer_token(fp))
      fail(ErrorCode::ParseError, "bad decimal '" + t + "'");
    mpz_class num(ip + fp);
    mpz_class den(1);
    for (size_t i = 0; i < t.size() - dot - 1; ++i) den *= 10;
    Scalar q(num, den);
    q.canonicalize();
    if (neg) q = -q;
    return q;
  }

  if (!is_integer_token(t)) fail(ErrorCode::ParseError, "bad integer '" + t + "'");
  return Scalar(mpz_class(t));
}

std::string scalar_to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

double scalar_to_double(const Scalar& s) { return s.get_d(); }

uint64_t hash_uint64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t hash_combine(uint64_t seed, uint64_t value) {
  return hash_uint64(seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

namespace {
uint64_t hash_mpz(const mpz_class& z) {
  const mpz_srcptr p = z.get_mpz_t();
  uint64_t h = hash_uint64(static_cast<uint64_t>(static_cast<int64_t>(p->_mp_size)));
  const int n = std::abs(p->_mp_size);
  for (int i = 0; i < n; ++i) h = hash_combine(h, static_cast<uint64_t>(p->_mp_d[i]));
  return h;
}
}  // namespace

uint64_t hash_scalar(const Scalar& s) {
  return hash_combine(hash_mpz(s.get_num()), hash_mpz(s.get_den()));
}

}  // namespace arrfaces
