#include "courant/catalog.hpp"

#include "courant/big_bracket.hpp"
#include "courant/builders.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace courant {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

const TensorDefinition* SetupDefinition::find(std::string_view tensor) const {
  for (const auto& t : tensors) {
    if (t.name == tensor) return &t;
  }
  return nullptr;
}

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_count(std::string_view s) {
  if (s.empty() || s.size() > 6) throw std::invalid_argument("expected a small non-negative integer");
  int v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("expected a non-negative integer");
    v = v * 10 + (c - '0');
  }
  return v;
}

// "theta3", "x1^2": generator plus repetition count, range-checked.
std::pair<Generator, int> parse_power(const Signature& sig, std::string_view tok) {
  int exp = 1;
  const auto caret = tok.find('^');
  if (caret != std::string_view::npos) {
    exp = parse_count(tok.substr(caret + 1));
    if (exp == 0) throw std::invalid_argument("zero exponent");
    tok = tok.substr(0, caret);
  }
  const Generator g = Generator::parse(tok);
  const int bound = (g.kind == GeneratorKind::X || g.kind == GeneratorKind::P) ? sig.n() : sig.d();
  if (g.index < 1 || g.index > bound) {
    throw std::invalid_argument("generator " + std::string(tok) + " out of range for signature (" +
                                std::to_string(sig.n()) + "," + std::to_string(sig.d()) + ")");
  }
  return {g, exp};
}

std::string power_text(const std::string& name, std::uint32_t e) {
  return e == 1 ? name : name + "^" + std::to_string(e);
}

// Generator words of a monomial in canonical order; the odd part is already
// sorted so its sign is +1.
std::vector<std::string> monomial_words(const Signature& sig, const Monomial& m) {
  std::vector<std::string> out;
  for (int i = 0; i < sig.n(); ++i) {
    if (m.x[i]) out.push_back(power_text(Generator{GeneratorKind::X, i + 1}.name(), m.x[i]));
  }
  for (int i = 0; i < sig.n(); ++i) {
    if (m.p[i]) out.push_back(power_text(Generator{GeneratorKind::P, i + 1}.name(), m.p[i]));
  }
  for (int b = 0; b < 2 * sig.d(); ++b) {
    if (m.odd >> b & 1U) out.push_back(odd_generator_at(sig, b).name());
  }
  return out;
}

void emit_terms(std::ostringstream& os, const SuperPolynomial& f) {
  for (const auto& [m, c] : f.terms()) {
    os << "  term " << to_string(c);
    for (const auto& w : monomial_words(f.signature(), m)) os << ' ' << w;
    os << '\n';
  }
}

const std::set<std::string> kKeysTensor{"I", "J"};

struct TaskSpec {
  std::set<std::string> required;
  std::set<std::string> optional;
};

std::optional<TaskSpec> task_spec(const std::string& kind) {
  static const std::map<std::string, TaskSpec> specs{
      {"courant", {{}, {"expect"}}},
      {"axioms", {{}, {}}},
      {"classify", {{"I", "J"}, {"expect"}}},
      {"deforming", {{"J"}, {"expect"}}},
      {"nijenhuis", {{"I"}, {"expect"}}},
      {"maurer-cartan", {{"J"}, {}}},
      {"hierarchy", {{"I", "J"}, {"n", "k"}}},
      {"catalog", {{"I"}, {"J", "lambda0"}}},
  };
  if (const auto it = specs.find(kind); it != specs.end()) return it->second;
  const auto& ids = identity_ids();
  if (std::find(ids.begin(), ids.end(), kind) != ids.end()) {
    return TaskSpec{{"I"}, {"J", "k", "m", "n", "s", "t", "lambda0"}};
  }
  return std::nullopt;
}

void check_value(const std::string& kind, const std::string& key, const std::string& value) {
  if (key == "k" || key == "m" || key == "n" || key == "s" || key == "t") {
    parse_count(value);
  } else if (key == "lambda0") {
    parse_rational(value);
  } else if (key == "expect") {
    if (kind == "courant" || kind == "nijenhuis") {
      if (value != "yes" && value != "no") throw std::invalid_argument("expect must be yes or no");
    } else if (kind == "classify") {
      parse_pair_class(value);
    } else if (kind == "deforming") {
      if (value != "none") parse_rational(value);
    }
  }
}

struct PendingTask {
  std::vector<Token> tokens;
  int line;
};

void validate_task(const SetupDefinition& setup, const PendingTask& task) {
  const auto& kind = task.tokens[1];
  const auto spec = task_spec(kind.text);
  if (!spec) throw ParseError(task.line, kind.column, "unknown task kind '" + kind.text + "'");
  std::set<std::string> seen;
  for (std::size_t w = 2; w < task.tokens.size(); ++w) {
    const auto& tok = task.tokens[w];
    const auto eq = tok.text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == tok.text.size()) {
      throw ParseError(task.line, tok.column, "expected KEY=VALUE, got '" + tok.text + "'");
    }
    const std::string key = tok.text.substr(0, eq);
    const std::string value = tok.text.substr(eq + 1);
    if (!spec->required.count(key) && !spec->optional.count(key)) {
      throw ParseError(task.line, tok.column, "task " + kind.text + " does not take '" + key + "'");
    }
    if (!seen.insert(key).second) throw ParseError(task.line, tok.column, "duplicate argument '" + key + "'");
    const int vcol = tok.column + static_cast<int>(eq) + 1;
    if (kKeysTensor.count(key)) {
      if (!setup.find(value)) throw ParseError(task.line, vcol, "unknown tensor '" + value + "'");
      continue;
    }
    try {
      check_value(kind.text, key, value);
    } catch (const std::exception& e) {
      throw ParseError(task.line, vcol, e.what());
    }
  }
  for (const auto& key : spec->required) {
    if (!seen.count(key)) throw ParseError(task.line, kind.column, "task " + kind.text + " requires " + key + "=");
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SetupDefinition run() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const auto nl = text_.find('\n', pos);
      const auto end = nl == std::string_view::npos ? text_.size() : nl;
      ++line_;
      auto raw = text_.substr(pos, end - pos);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      line(tokenize(raw));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (mode_ != Mode::Top) throw ParseError(block_line_, 1, "block is not closed with 'end'");
    if (out_.name.empty()) throw ParseError(1, 1, "missing 'setup'");
    if (!have_signature_) throw ParseError(1, 1, "missing 'signature'");
    for (const auto& t : pending_) validate_task(out_, t);
    return out_;
  }

 private:
  enum class Mode { Top, Theta, Function, Matrix };

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.column, msg); }

  void expect_args(const std::vector<Token>& t, std::size_t count) const {
    if (t.size() < count) fail(t.back(), "missing argument to '" + t[0].text + "'");
    if (t.size() > count) fail(t[count], "unexpected '" + t[count].text + "'");
  }

  void need_signature(const Token& t) const {
    if (!have_signature_) fail(t, "'" + t.text + "' before 'signature'");
  }

  void line(const std::vector<Token>& t) {
    if (t.empty()) return;
    const std::string& head = t[0].text;
    if (mode_ != Mode::Top) return block_line(t);
    if (head == "setup") {
      expect_args(t, 2);
      if (!out_.name.empty()) fail(t[0], "duplicate 'setup'");
      out_.name = t[1].text;
    } else if (head == "signature") {
      expect_args(t, 3);
      if (have_signature_) fail(t[0], "duplicate 'signature'");
      int n = 0;
      int d = 0;
      try {
        n = parse_count(t[1].text);
      } catch (const std::exception& e) {
        fail(t[1], e.what());
      }
      try {
        d = parse_count(t[2].text);
      } catch (const std::exception& e) {
        fail(t[2], e.what());
      }
      try {
        out_.signature = Signature(n, d);
      } catch (const std::exception& e) {
        fail(t[1], e.what());
      }
      out_.theta = PreCourant::make(SuperPolynomial(out_.signature));
      have_signature_ = true;
    } else if (head == "theta") {
      expect_args(t, 1);
      need_signature(t[0]);
      if (have_theta_) fail(t[0], "duplicate 'theta'");
      have_theta_ = true;
      open(Mode::Theta);
    } else if (head == "tensor") {
      expect_args(t, 3);
      need_signature(t[0]);
      if (out_.find(t[1].text)) fail(t[1], "duplicate tensor '" + t[1].text + "'");
      tensor_name_ = t[1].text;
      if (t[2].text == "function") {
        open(Mode::Function);
      } else if (t[2].text == "matrix") {
        open(Mode::Matrix);
      } else {
        fail(t[2], "expected 'function' or 'matrix'");
      }
    } else if (head == "task") {
      if (t.size() < 2) fail(t[0], "missing task kind");
      need_signature(t[0]);
      pending_.push_back({t, line_});
      TaskDefinition task;
      task.line = line_;
      for (std::size_t i = 1; i < t.size(); ++i) task.words.push_back(t[i].text);
      out_.tasks.push_back(std::move(task));
    } else {
      fail(t[0], "unknown directive '" + head + "'");
    }
  }

  void open(Mode m) {
    mode_ = m;
    block_line_ = line_;
    raw_.clear();
    rows_.clear();
  }

  void block_line(const std::vector<Token>& t) {
    const std::string& head = t[0].text;
    if (head == "end") {
      expect_args(t, 1);
      close(t[0]);
      return;
    }
    if (mode_ == Mode::Matrix) {
      if (head != "row") fail(t[0], "expected 'row' or 'end'");
      const int dim = 2 * out_.signature.d();
      if (static_cast<int>(t.size()) - 1 != dim) {
        fail(t[0], "row needs " + std::to_string(dim) + " entries, got " + std::to_string(t.size() - 1));
      }
      std::vector<SuperPolynomial> row;
      for (std::size_t i = 1; i < t.size(); ++i) {
        try {
          row.push_back(parse_entry(out_.signature, t[i].text));
        } catch (const std::exception& e) {
          fail(t[i], e.what());
        }
      }
      rows_.push_back(std::move(row));
      return;
    }
    if (head != "term") fail(t[0], "expected 'term' or 'end'");
    if (t.size() < 2) fail(t[0], "missing coefficient");
    RawTerm term;
    try {
      term.coefficient = parse_rational(t[1].text);
    } catch (const std::exception& e) {
      fail(t[1], e.what());
    }
    for (std::size_t i = 2; i < t.size(); ++i) {
      try {
        const auto [g, e] = parse_power(out_.signature, t[i].text);
        if (g.is_odd() && e > 1) fail(t[i], "odd generator raised to a power");
        for (int r = 0; r < e; ++r) term.word.push_back(g);
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception& e) {
        fail(t[i], e.what());
      }
    }
    raw_.push_back(std::move(term));
  }

  void close(const Token& end) {
    const Token at{end.text, end.column};
    if (mode_ == Mode::Theta) {
      try {
        out_.theta = PreCourant::make(normalize(out_.signature, raw_));
      } catch (const std::exception& e) {
        fail(at, std::string("theta: ") + e.what());
      }
    } else if (mode_ == Mode::Function) {
      try {
        const auto f = TensorFunction::make(normalize(out_.signature, raw_));
        out_.tensors.push_back({tensor_name_, false, endo_of(f)});
      } catch (const std::exception& e) {
        fail(at, "tensor " + tensor_name_ + ": " + e.what());
      }
    } else {
      const int dim = 2 * out_.signature.d();
      if (static_cast<int>(rows_.size()) != dim) {
        fail(at, "matrix needs " + std::to_string(dim) + " rows, got " + std::to_string(rows_.size()));
      }
      Endomorphism e(out_.signature);
      for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) e.set(r, c, rows_[r][c]);
      }
      out_.tensors.push_back({tensor_name_, true, e});
    }
    mode_ = Mode::Top;
  }

  std::string_view text_;
  int line_ = 0;
  int block_line_ = 0;
  Mode mode_ = Mode::Top;
  bool have_signature_ = false;
  bool have_theta_ = false;
  std::string tensor_name_;
  std::vector<RawTerm> raw_;
  std::vector<std::vector<SuperPolynomial>> rows_;
  std::vector<PendingTask> pending_;
  SetupDefinition out_;
};

}  // namespace

SuperPolynomial parse_entry(const Signature& sig, std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty entry");
  std::vector<RawTerm> terms;
  std::size_t i = 0;
  while (i < text.size()) {
    Rational sign(1);
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
    } else if (!terms.empty()) {
      throw std::invalid_argument("expected + or - in entry '" + std::string(text) + "'");
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != '+' && text[j] != '-') ++j;
    const auto body = text.substr(i, j - i);
    if (body.empty()) throw std::invalid_argument("empty term in entry '" + std::string(text) + "'");
    RawTerm term{{}, sign};
    std::size_t a = 0;
    while (a <= body.size()) {
      auto b = body.find('*', a);
      if (b == std::string_view::npos) b = body.size();
      const auto factor = body.substr(a, b - a);
      if (factor.empty()) throw std::invalid_argument("empty factor in entry '" + std::string(text) + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        term.coefficient *= parse_rational(factor);
      } else {
        const auto [g, e] = parse_power(sig, factor);
        if (g.kind != GeneratorKind::X) throw std::invalid_argument("matrix entries may only involve x");
        for (int r = 0; r < e; ++r) term.word.push_back(g);
      }
      a = b + 1;
    }
    terms.push_back(std::move(term));
    i = j;
  }
  return normalize(sig, terms);
}

std::string emit_entry(const SuperPolynomial& entry) {
  if (entry.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : entry.terms()) {
    const Rational mag = abs(c);
    if (sgn(c) < 0) {
      out += '-';
    } else if (!first) {
      out += '+';
    }
    first = false;
    const auto words = monomial_words(entry.signature(), m);
    std::vector<std::string> factors;
    if (mag != 1 || words.empty()) factors.push_back(to_string(mag));
    factors.insert(factors.end(), words.begin(), words.end());
    for (std::size_t f = 0; f < factors.size(); ++f) {
      if (f) out += '*';
      out += factors[f];
    }
  }
  return out;
}

SetupDefinition parse_definition(std::string_view text) { return Parser(text).run(); }

std::string emit_definition(const SetupDefinition& setup) {
  std::ostringstream os;
  const auto& sig = setup.signature;
  os << "setup " << setup.name << '\n';
  os << "signature " << sig.n() << ' ' << sig.d() << '\n';
  os << "theta\n";
  emit_terms(os, setup.theta.theta());
  os << "end\n";
  for (const auto& t : setup.tensors) {
    if (t.as_matrix) {
      os << "tensor " << t.name << " matrix\n";
      for (int r = 0; r < t.value.dim(); ++r) {
        os << "  row";
        for (int c = 0; c < t.value.dim(); ++c) os << ' ' << emit_entry(t.value.at(r, c));
        os << '\n';
      }
    } else {
      os << "tensor " << t.name << " function\n";
      emit_terms(os, func_of(t.value).value());
    }
    os << "end\n";
  }
  for (const auto& task : setup.tasks) {
    os << "task";
    for (const auto& w : task.words) os << ' ' << w;
    os << '\n';
  }
  return os.str();
}

bool same_definition(const SetupDefinition& a, const SetupDefinition& b) {
  if (a.name != b.name || !(a.signature == b.signature) || !(a.theta == b.theta)) return false;
  if (a.tensors.size() != b.tensors.size() || a.tasks.size() != b.tasks.size()) return false;
  for (std::size_t i = 0; i < a.tensors.size(); ++i) {
    const auto& x = a.tensors[i];
    const auto& y = b.tensors[i];
    if (x.name != y.name || x.as_matrix != y.as_matrix || !(x.value == y.value)) return false;
  }
  for (std::size_t i = 0; i < a.tasks.size(); ++i) {
    if (a.tasks[i].words != b.tasks[i].words) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Task execution

namespace {

using Args = std::map<std::string, std::string>;

Args task_args(const TaskDefinition& task) {
  Args out;
  for (std::size_t w = 1; w < task.words.size(); ++w) {
    const auto eq = task.words[w].find('=');
    out[task.words[w].substr(0, eq)] = task.words[w].substr(eq + 1);
  }
  return out;
}

std::string instance_name(const SetupDefinition& setup, const TaskDefinition& task) {
  std::string out = setup.name;
  for (std::size_t w = 1; w < task.words.size(); ++w) out += ' ' + task.words[w];
  return out;
}

const Endomorphism& tensor(const SetupDefinition& setup, const Args& args, const std::string& key) {
  const auto* t = setup.find(args.at(key));
  if (!t) throw ValidationError("unknown tensor '" + args.at(key) + "'");
  return t->value;
}

TensorFunction skew(const SetupDefinition& setup, const Args& args, const std::string& key) {
  const auto& e = tensor(setup, args, key);
  if (!e.is_skew()) throw ValidationError("tensor " + args.at(key) + " is not skew");
  return func_of(e);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void settle(IdentityReport& r, bool ok, const std::string& failure) {
  ++r.checks;
  if (!ok) r.failures.push_back(failure);
}

void finish(IdentityReport& r) {
  if (!r.failures.empty()) {
    r.status = CheckStatus::Failed;
  } else if (r.checks > 0) {
    r.status = CheckStatus::Passed;
  } else {
    r.status = CheckStatus::NotApplicable;
  }
}

void run_courant(const SetupDefinition& s, const Args& args, IdentityReport& r) {
  const bool want = args.count("expect") ? args.at("expect") == "yes" : true;
  const bool got = is_courant(s.theta);
  r.details["courant"] = yes_no(got);
  const auto basis = section_basis(s.signature);
  std::size_t nonzero = 0;
  std::string witness;
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      for (const auto& z : basis) {
        const auto jac = jacobiator(s.theta, x, y, z);
        if (jac.is_zero()) continue;
        if (!nonzero) witness = x.to_string() + ", " + y.to_string() + ", " + z.to_string();
        ++nonzero;
        r.residual_terms += jac.size();
      }
    }
  }
  r.details["jacobiator_nonzero_triples"] = std::to_string(nonzero);
  if (!witness.empty()) r.details["jacobiator_witness"] = witness;
  settle(r, got == want, "{Theta,Theta} = 0 is " + yes_no(got) + ", expected " + yes_no(want));
  if (s.signature.n() == 0) {
    // Over a point the Jacobiator on basis triples decides the Courant property.
    settle(r, (nonzero == 0) == want, "Jacobiator on basis triples disagrees with the expectation");
  }
}

void run_axioms(const SetupDefinition& s, IdentityReport& r) {
  for (const auto& res : check_pre_courant_axioms(s.theta, probe_sections(s.signature))) {
    ++r.checks;
    if (res.residual.is_zero()) continue;
    r.residual_terms += res.residual.size();
    if (r.failures.size() < 20) r.failures.push_back(res.label);
  }
}

std::string eta_text(const std::optional<Rational>& eta) { return eta ? to_string(*eta) : "none"; }

void run_classify(const SetupDefinition& s, const Args& args, IdentityReport& r) {
  const auto c = classify_pair(s.theta, skew(s, args, "I"), skew(s, args, "J"));
  r.details["anti_commute"] = yes_no(c.anti_commute);
  r.details["anti_commute_wrt_theta"] = yes_no(c.anti_commute_wrt_theta);
  r.details["compatible_pair"] = yes_no(c.compatible_pair);
  r.details["nijenhuis_i"] = yes_no(c.nijenhuis_i);
  r.details["nijenhuis_j"] = yes_no(c.nijenhuis_j);
  r.details["deforming_eta"] = eta_text(c.deforming_eta);
  r.details["poisson_j"] = yes_no(c.poisson_j);
  r.details["degenerate_theta"] = yes_no(c.degenerate_theta);
  r.details["class"] = to_string(c.pair_class);
  if (args.count("expect")) {
    const auto want = parse_pair_class(args.at("expect"));
    settle(r, c.pair_class == want, "class is " + to_string(c.pair_class) + ", expected " + to_string(want));
  } else {
    ++r.checks;
  }
}

void run_deforming(const SetupDefinition& s, const Args& args, IdentityReport& r) {
  const auto eta = deforming_constant(s.theta, skew(s, args, "J"));
  r.details["eta"] = eta_text(eta);
  if (args.count("expect")) {
    const auto& want = args.at("expect");
    const bool ok = want == "none" ? !eta : (eta && *eta == parse_rational(want));
    settle(r, ok, "eta is " + eta_text(eta) + ", expected " + want);
  } else {
    ++r.checks;
  }
}

void run_nijenhuis(const SetupDefinition& s, const Args& args, IdentityReport& r) {
  const bool want = args.count("expect") ? args.at("expect") == "yes" : true;
  const auto& e = tensor(s, args, "I");
  const auto t = torsion(s.theta, e);
  const auto zero = [](const SuperPolynomial&, const SuperPolynomial& y) { return SuperPolynomial(y.signature()); };
  r.residual_terms = probe_residual_terms(t, zero, s.signature);
  const bool got = r.residual_terms == 0;
  r.details["nijenhuis"] = yes_no(got);
  settle(r, got == want, "torsion vanishes is " + yes_no(got) + ", expected " + yes_no(want));
}

// J = 1/2 id + pi with id the tensor sum_a xi_a theta^a: J deforms with
// eta = 1/4 exactly when d_gamma pi = 1/2 [pi,pi]_mu.
void run_maurer_cartan(const SetupDefinition& s, const Args& args, IdentityReport& r) {
  const Signature& sig = s.signature;
  const auto j = skew(s, args, "J");
  const SuperPolynomial id = i_n(sig, identity_matrix(sig.d())).value();
  const SuperPolynomial pi = j.value() - Rational(1, 2) * id;
  const Endomorphism epi = endo_of(TensorFunction::make(pi));
  const int d = sig.d();
  bool shape = true;
  for (int row = 0; row < 2 * d; ++row) {
    for (int col = 0; col < 2 * d; ++col) {
      if (row < d && col >= d) continue;
      if (!epi.at(row, col).is_zero()) shape = false;
    }
  }
  if (!shape) {
    r.skipped.push_back("J = 1/2 id + pi with pi a bivector");
    return;
  }
  const auto parts = decompose(s.theta);
  const SuperPolynomial dgamma = bracket(pi, parts.gamma);
  const SuperPolynomial schouten = bracket(pi, bracket(pi, parts.mu));
  const SuperPolynomial residual = dgamma - Rational(1, 2) * schouten;
  const bool mc = residual.is_zero();
  const auto eta = deforming_constant(s.theta, j);
  r.details["pi"] = pi.to_string();
  r.details["maurer_cartan"] = yes_no(mc);
  r.details["eta"] = eta_text(eta);
  r.residual_terms = residual.size();
  settle(r, mc == eta.has_value(), "Maurer-Cartan is " + yes_no(mc) + " but eta is " + eta_text(eta));
  if (eta) settle(r, *eta == Rational(1, 4), "eta is " + to_string(*eta) + ", expected 1/4");
}

void run_hierarchy(const SetupDefinition& s, const Args& args, const RunOptions& o, IdentityReport& r) {
  const int n = args.count("n") ? std::stoi(args.at("n")) : o.bounds.n;
  const int k = args.count("k") ? std::stoi(args.at("k")) : o.bounds.k;
  const auto h = build_pn_hierarchy(s.theta, skew(s, args, "J"), skew(s, args, "I"), n, k);
  r.details["class"] = to_string(h.input.pair_class);
  if (!h.applicable) {
    r.skipped.push_back(h.reason);
    return;
  }
  for (const auto& e : h.tensors) {
    settle(r, e.poisson,
           "I^" + std::to_string(e.n) + " J not Poisson for Theta_" + std::to_string(e.k));
  }
  for (const auto& e : h.compatibility) {
    settle(r, e.compatible,
           "I^" + std::to_string(e.m) + " J, I^" + std::to_string(e.n) + " J not compatible for Theta_" +
               std::to_string(e.k));
  }
  if (r.failures.size() > 20) r.failures.resize(20);
  r.details["tensors"] = std::to_string(h.tensors.size());
  r.details["pairs"] = std::to_string(h.compatibility.size());
}

IdentityReport run_identity(const SetupDefinition& s, const Args& args, const std::string& id,
                            const std::string& instance, const RunOptions& o) {
  IdentityBindings b{instance, s.theta, tensor(s, args, "I"), std::nullopt, std::nullopt};
  if (args.count("J")) b.j = tensor(s, args, "J");
  if (args.count("lambda0")) b.lambda0 = parse_rational(args.at("lambda0"));
  IdentityBounds bounds = o.bounds;
  const auto take = [&](const char* key, int& slot) {
    if (args.count(key)) slot = std::stoi(args.at(key));
  };
  take("k", bounds.k);
  take("m", bounds.m);
  take("n", bounds.n);
  take("s", bounds.s);
  take("t", bounds.t);
  return verify_identity(id, b, bounds, o.identity);
}

using Job = std::function<IdentityReport()>;

void schedule(const SetupDefinition& s, const TaskDefinition& task, const RunOptions& o, std::vector<Job>& jobs) {
  const std::string& kind = task.words.at(0);
  if (o.catalog_only && kind != "catalog") return;
  const Args args = task_args(task);
  const std::string instance = instance_name(s, task);
  const auto simple = [&](std::function<void(IdentityReport&)> body) {
    jobs.push_back([kind, instance, body] {
      IdentityReport r;
      r.identity_id = kind;
      r.instance = instance;
      body(r);
      finish(r);
      return r;
    });
  };
  if (kind == "courant") {
    simple([&s, args](IdentityReport& r) { run_courant(s, args, r); });
  } else if (kind == "axioms") {
    simple([&s](IdentityReport& r) { run_axioms(s, r); });
  } else if (kind == "classify") {
    simple([&s, args](IdentityReport& r) { run_classify(s, args, r); });
  } else if (kind == "deforming") {
    simple([&s, args](IdentityReport& r) { run_deforming(s, args, r); });
  } else if (kind == "nijenhuis") {
    simple([&s, args](IdentityReport& r) { run_nijenhuis(s, args, r); });
  } else if (kind == "maurer-cartan") {
    simple([&s, args](IdentityReport& r) { run_maurer_cartan(s, args, r); });
  } else if (kind == "hierarchy") {
    simple([&s, args, &o](IdentityReport& r) { run_hierarchy(s, args, o, r); });
  } else if (kind == "catalog") {
    for (const auto& id : identity_ids()) {
      jobs.push_back([&s, args, id, instance, &o] { return run_identity(s, args, id, instance, o); });
    }
  } else {
    jobs.push_back([&s, args, kind, instance, &o] { return run_identity(s, args, kind, instance, o); });
  }
}

std::vector<IdentityReport> execute(const std::vector<Job>& jobs, int threads) {
  std::vector<IdentityReport> out(jobs.size());
  const auto guarded = [&](std::size_t i) {
    try {
      out[i] = jobs[i]();
    } catch (const std::exception& e) {
      out[i] = IdentityReport{};
      out[i].status = CheckStatus::Failed;
      out[i].failures.push_back(std::string("error: ") + e.what());
    }
  };
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), jobs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) guarded(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) guarded(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

// Labels for reports whose job threw before naming itself.
void label(std::vector<IdentityReport>& reports, const std::vector<std::pair<std::string, std::string>>& names) {
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].identity_id.empty()) reports[i].identity_id = names[i].first;
    if (reports[i].instance.empty()) reports[i].instance = names[i].second;
  }
}

void collect(const SetupDefinition& s, const RunOptions& o, std::vector<Job>& jobs,
             std::vector<std::pair<std::string, std::string>>& names) {
  for (const auto& task : s.tasks) {
    const std::size_t before = jobs.size();
    schedule(s, task, o, jobs);
    const bool expands = task.words[0] == "catalog";
    for (std::size_t i = before; i < jobs.size(); ++i) {
      names.emplace_back(expands ? identity_ids()[i - before] : task.words[0], instance_name(s, task));
    }
  }
}

SetupEcho echo(const SetupDefinition& s) { return {s.name, s.signature, s.theta.theta().to_string()}; }

}  // namespace

std::size_t Report::count(CheckStatus s) const {
  return static_cast<std::size_t>(std::count_if(tasks.begin(), tasks.end(), [&](const auto& t) { return t.status == s; }));
}

Report run_setup(const SetupDefinition& setup, const RunOptions& options) {
  std::vector<Job> jobs;
  std::vector<std::pair<std::string, std::string>> names;
  collect(setup, options, jobs, names);
  Report out;
  out.setup = setup.name;
  out.structures.push_back(echo(setup));
  out.tasks = execute(jobs, options.jobs);
  label(out.tasks, names);
  return out;
}

Report verify_all(const RunOptions& options) {
  RunOptions o = options;
  o.catalog_only = true;
  std::vector<Job> jobs;
  std::vector<std::pair<std::string, std::string>> names;
  Report out;
  out.setup = "builtin-catalog";
  for (const auto& ex : builtin_examples()) {
    out.structures.push_back(echo(ex.definition));
    collect(ex.definition, o, jobs, names);
  }
  out.tasks = execute(jobs, o.jobs);
  label(out.tasks, names);
  return out;
}

std::string report_json(const Report& report) {
  using nlohmann::json;
  json structures = json::array();
  for (const auto& s : report.structures) {
    structures.push_back({{"name", s.name},
                          {"signature", {{"n", s.signature.n()}, {"d", s.signature.d()}}},
                          {"theta", s.theta}});
  }
  json tasks = json::array();
  for (const auto& t : report.tasks) {
    tasks.push_back({{"id", t.identity_id},
                     {"instance", t.instance},
                     {"status", to_string(t.status)},
                     {"checks", t.checks},
                     {"residual_terms", t.residual_terms},
                     {"failures", t.failures},
                     {"skipped", t.skipped},
                     {"details", t.details}});
  }
  json doc{{"setup", {{"name", report.setup}, {"structures", structures}}},
           {"tasks", tasks},
           {"summary",
            {{"passed", report.count(CheckStatus::Passed)},
             {"failed", report.count(CheckStatus::Failed)},
             {"not-applicable", report.count(CheckStatus::NotApplicable)},
             {"total", report.tasks.size()}}}};
  return doc.dump(2) + "\n";
}

std::string report_text(const Report& report) {
  std::ostringstream os;
  os << "setup " << report.setup << '\n';
  for (const auto& t : report.tasks) {
    const char* tag = t.status == CheckStatus::Passed ? "PASS" : t.status == CheckStatus::Failed ? "FAIL" : "N/A ";
    os << tag << "  " << t.identity_id << "  " << t.instance << "  checks=" << t.checks;
    if (t.residual_terms) os << " residual_terms=" << t.residual_terms;
    os << '\n';
    for (const auto& f : t.failures) os << "      failed: " << f << '\n';
    for (const auto& s : t.skipped) os << "      skipped: " << s << '\n';
    for (const auto& [k, v] : t.details) os << "      " << k << " = " << v << '\n';
  }
  os << "summary: " << report.count(CheckStatus::Passed) << " passed, " << report.count(CheckStatus::Failed)
     << " failed, " << report.count(CheckStatus::NotApplicable) << " not-applicable, " << report.tasks.size()
     << " total\n";
  return os.str();
}

}  // namespace courant
