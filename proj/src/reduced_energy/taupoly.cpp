// SPDX-License-Identifier: MIT
// Polynomials in lambda' over Q[tau] and the reader for transcribed data.
#include "qcv/errors.hpp"
#include "qcv/reduced_energy.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qcv {

// ---------------------------------------------------------------- TauPoly

namespace {

void drop_zeros(std::map<int, TauQ>& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second.is_zero())
      it = m.erase(it);
    else
      ++it;
  }
}

}  // namespace

bool TauPoly::operator==(const TauPoly& o) const {
  return mismatched_exponents(o).empty();
}

TauPoly TauPoly::operator+(const TauPoly& o) const {
  TauPoly r = *this;
  if (r.dim == 0) r.dim = o.dim;
  for (const auto& [e, c] : o.coeffs) r.coeffs[e] += c;
  drop_zeros(r.coeffs);
  return r;
}

TauPoly TauPoly::operator-(const TauPoly& o) const { return *this + o * BigRational(-1); }

TauPoly TauPoly::operator*(const BigRational& c) const {
  TauPoly r;
  r.dim = dim;
  for (const auto& [e, v] : coeffs) r.coeffs[e] = v * c;
  drop_zeros(r.coeffs);
  return r;
}

TauPoly TauPoly::derivative() const {
  TauPoly r;
  r.dim = dim;
  for (const auto& [e, v] : coeffs)
    if (e != 0) r.coeffs[e - 1] = v * BigRational(e);
  drop_zeros(r.coeffs);
  return r;
}

TauQ TauPoly::at_one() const {
  TauQ s;
  for (const auto& [e, v] : coeffs) s += v;
  return s;
}

TauQ TauPoly::derivative_at_one(int k) const {
  TauPoly p = *this;
  for (int i = 0; i < k; ++i) p = p.derivative();
  return p.at_one();
}

BigRational TauPoly::eval(const BigRational& lambda, const BigRational& tau) const {
  BigRational s = 0;
  for (const auto& [e, v] : coeffs) {
    BigRational pw = 1;
    BigRational base = e >= 0 ? lambda : BigRational(1) / lambda;
    for (int i = 0; i < std::abs(e); ++i) pw *= base;
    s += v.at(tau) * pw;
  }
  return s;
}

Real TauPoly::eval_real(const Real& lambda, const Real& tau) const {
  Real s = 0;
  for (const auto& [e, v] : coeffs) {
    Real c = to_real(v.q[0]) + tau * (to_real(v.q[1]) + tau * to_real(v.q[2]));
    s += c * boost::multiprecision::pow(lambda, e);
  }
  return s;
}

std::vector<int> TauPoly::mismatched_exponents(const TauPoly& o) const {
  std::vector<int> out;
  TauPoly d = *this - o;
  for (const auto& [e, v] : d.coeffs) out.push_back(e);
  return out;
}

bool TauPoly::has_tau_power(int k) const {
  for (const auto& [e, v] : coeffs)
    if (v.q[static_cast<size_t>(k)] != 0) return true;
  return false;
}

// ---------------------------------------------------------------- parser

std::string data_dir() {
  if (const char* env = std::getenv("QCV_DATA_DIR"); env && *env) return env;
  return QCV_DATA_DIR;
}

std::vector<TranscriptionLine> load_transcription(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open transcription file " + path);
  std::vector<TranscriptionLine> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError(path + ":" + std::to_string(no) + ": expected 'key: expression'");
    TranscriptionLine t;
    t.key = line.substr(first, colon - first);
    while (!t.key.empty() && std::isspace(static_cast<unsigned char>(t.key.back())))
      t.key.pop_back();
    t.expr = line.substr(colon + 1);
    t.line_no = no;
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

// Recursive descent over
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | 'N' | 'tau' | '(' expr ')'
// with N replaced by its value.  Every parenthesised group that evaluates to
// zero is remembered, so a vanishing divisor can be reported by the factor
// that made it vanish.
class Parser {
 public:
  Parser(const std::string& text, int N) : s_(text), N_(N) {}

  TauQ parse() {
    TauQ v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(pos_ + 1) + " in: " + s_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  TauQ expr() {
    TauQ v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  TauQ term() {
    TauQ v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        size_t mark = zero_groups_.size();
        size_t start = pos_;
        TauQ d = unary();
        if (d.degree() > 0) fail("division by a tau-dependent expression");
        if (d.q[0] == 0) {
          std::string factor = zero_groups_.size() > mark
                                   ? zero_groups_[mark]
                                   : trim(s_.substr(start, pos_ - start));
          throw DenominatorZeroError("denominator factor " + factor +
                                     " vanishes at N = " + std::to_string(N_));
        }
        v = v / d.q[0];
      } else {
        return v;
      }
    }
  }

  TauQ unary() {
    if (eat('-')) return -unary();
    return power();
  }

  TauQ power() {
    TauQ v = atom();
    if (eat('^')) {
      skip();
      long k = integer();
      TauQ r(1);
      for (long i = 0; i < k; ++i) r = r * v;
      return r;
    }
    return v;
  }

  long integer() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    return std::stol(s_.substr(start, pos_ - start));
  }

  TauQ atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      size_t start = pos_;
      ++pos_;
      size_t mark = zero_groups_.size();
      TauQ v = expr();
      if (!eat(')')) fail("expected ')'");
      // Keep only the innermost vanishing group.
      if (v.is_zero() && zero_groups_.size() == mark)
        zero_groups_.push_back(s_.substr(start, pos_ - start));
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return TauQ(BigRational(BigInt(s_.substr(start, pos_ - start), 10)));
    }
    if (s_.compare(pos_, 3, "tau") == 0) {
      pos_ += 3;
      return TauQ::tau();
    }
    if (c == 'N') {
      ++pos_;
      return TauQ(N_);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  static std::string trim(std::string t) {
    auto a = t.find_first_not_of(" \t");
    auto b = t.find_last_not_of(" \t");
    return a == std::string::npos ? t : t.substr(a, b - a + 1);
  }

  const std::string& s_;
  int N_;
  size_t pos_ = 0;
  std::vector<std::string> zero_groups_;
};

}  // namespace

TauQ evaluate_transcription(const std::string& expr, int N) {
  return Parser(expr, N).parse();
}

TauPoly transcribed_poly(const std::string& file_stem, int N) {
  if (N < 5) throw DimensionError("transcribed polynomials need N >= 5");
  std::string path = data_dir() + "/transcriptions/" + file_stem + ".txt";
  TauPoly p;
  p.dim = N;
  for (const auto& line : load_transcription(path)) {
    if (line.key.rfind("lambda^", 0) != 0)
      throw ParseError(path + ":" + std::to_string(line.line_no) + ": unknown key " +
                       line.key);
    int e = std::stoi(line.key.substr(7));
    TauQ v;
    try {
      v = evaluate_transcription(line.expr, N);
    } catch (const DenominatorZeroError& err) {
      throw DenominatorZeroError(file_stem + " coefficient of " + line.key + ": " +
                                 err.what());
    }
    p.coeffs[e] += v;
  }
  drop_zeros(p.coeffs);
  return p;
}

TauPoly paper_I(int N) { return transcribed_poly("I", N); }
TauPoly paper_J1(int N) { return transcribed_poly("J1", N); }
TauPoly paper_J2(int N) { return transcribed_poly("J2", N); }

PrintedTauData printed_tau_data(int N) {
  std::string path = data_dir() + "/transcriptions/tau_quadratic.txt";
  PrintedTauData d;
  bool seen[4] = {false, false, false, false};
  for (const auto& line : load_transcription(path)) {
    TauQ v;
    try {
      v = evaluate_transcription(line.expr, N);
    } catch (const DenominatorZeroError& err) {
      throw DenominatorZeroError("tau equation " + line.key + ": " + err.what());
    }
    auto integer_of = [&](const TauQ& t) {
      if (t.degree() > 0 || t.q[0].get_den() != 1)
        throw ParseError(path + ": " + line.key + " must be an integer");
      return BigInt(t.q[0].get_num());
    };
    if (line.key == "dI1") {
      d.dI1 = v;
      seen[0] = true;
    } else if (line.key == "A1") {
      d.A1 = integer_of(v);
      seen[1] = true;
    } else if (line.key == "A2") {
      d.A2 = integer_of(v);
      seen[2] = true;
    } else if (line.key == "A3") {
      d.A3 = integer_of(v);
      seen[3] = true;
    } else {
      throw ParseError(path + ": unknown key " + line.key);
    }
  }
  for (bool b : seen)
    if (!b) throw ParseError(path + ": missing one of dI1, A1, A2, A3");
  return d;
}

}  // namespace qcv
