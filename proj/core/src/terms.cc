#include "qapnet/terms.h"

#include <cctype>
#include <set>

#include <fmt/format.h>

#include "qapnet/builders.h"
#include "qapnet/error.h"

namespace qapnet {
namespace {

const std::set<std::string, std::less<>> kNumericOps = {"mean", "centered_mean",
                                                        "similarity"};
const std::set<std::string, std::less<>> kLevelOps = {"any", "both", "one"};
const std::set<std::string, std::less<>> kNetworkOps = {"or", "mutual", "asymmetric"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TermExpr ParseAll() {
    TermExpr expr = ParseExpr();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected trailing input");
    return expr;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(fmt::format("bad term '{}' at offset {}: {}", text_, pos_, what));
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool Accept(char c) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void Expect(char c) {
    if (!Accept(c)) Fail(fmt::format("expected '{}'", c));
  }

  std::string Identifier() {
    SkipSpace();
    const std::size_t begin = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')
        ++pos_;
      else
        break;
    }
    if (pos_ == begin) Fail("expected a name");
    return std::string(text_.substr(begin, pos_ - begin));
  }

  std::string Level() {
    SkipSpace();
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')' && text_[pos_] != ',') ++pos_;
    std::string level(text_.substr(begin, pos_ - begin));
    while (!level.empty() && std::isspace(static_cast<unsigned char>(level.back())))
      level.pop_back();
    if (level.empty()) Fail("expected a level after '='");
    return level;
  }

  TermExpr ParseExpr() {
    TermExpr expr;
    std::string head = Identifier();
    if (!Accept('(')) {
      expr.op = "matrix";
      expr.name = std::move(head);
      return expr;
    }
    expr.op = head;
    if (expr.op == "product") {
      do {
        expr.args.push_back(ParseExpr());
      } while (Accept(','));
      if (expr.args.size() < 2) Fail("product needs at least two terms");
    } else if (kNumericOps.count(expr.op) || kNetworkOps.count(expr.op) ||
               expr.op == "same") {
      expr.name = Identifier();
    } else if (kLevelOps.count(expr.op)) {
      expr.name = Identifier();
      Expect('=');
      expr.level = Level();
    } else {
      Fail(fmt::format("unknown operator '{}'", expr.op));
    }
    Expect(')');
    return expr;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string TermExpr::ToString() const {
  if (op == "matrix") return name;
  if (op == "product") {
    std::vector<std::string> parts;
    for (const auto& a : args) parts.push_back(a.ToString());
    return fmt::format("product({})", fmt::join(parts, ","));
  }
  if (level) return fmt::format("{}({}={})", op, name, *level);
  return fmt::format("{}({})", op, name);
}

TermExpr ParseTerm(std::string_view text) { return Parser(text).ParseAll(); }

DyadicMatrix EvaluateTerm(const TermExpr& expr, const Dataset& data) {
  DyadicMatrix out;
  if (expr.op == "matrix") {
    auto it = data.dyadic.find(expr.name);
    if (it == data.dyadic.end())
      throw Error(fmt::format("unknown dyadic matrix '{}'", expr.name));
    out = it->second;
  } else if (expr.op == "mean") {
    out = MeanMatrix(data.panel.Numeric(expr.name));
  } else if (expr.op == "centered_mean") {
    out = CenteredMeanMatrix(data.panel.Numeric(expr.name), data.nodes().groups());
  } else if (expr.op == "similarity") {
    out = SimilarityMatrix(data.panel.Numeric(expr.name));
  } else if (kLevelOps.count(expr.op)) {
    if (data.source_panel) LevelIndicator(*data.source_panel, expr.name, *expr.level);
    const auto flags =
        LevelIndicator(data.panel, expr.name, *expr.level, data.source_panel == nullptr);
    if (expr.op == "any")
      out = DummyAny(flags);
    else if (expr.op == "both")
      out = DummyBoth(flags);
    else
      out = DummyExactlyOne(flags);
  } else if (expr.op == "same") {
    if (data.panel.IsNumeric(expr.name)) {
      CategoricalValues as_text;
      for (const auto& v : data.panel.Numeric(expr.name))
        as_text.push_back(v ? std::optional<std::string>(fmt::format("{}", *v))
                            : std::nullopt);
      out = SameCategory(as_text);
    } else {
      out = SameCategory(data.panel.Categorical(expr.name));
    }
  } else if (kNetworkOps.count(expr.op)) {
    auto it = data.networks.find(expr.name);
    if (it == data.networks.end())
      throw Error(fmt::format("unknown nomination network '{}'", expr.name));
    if (expr.op == "or")
      out = SymmetrizeOr(it->second);
    else if (expr.op == "mutual")
      out = MutualMatrix(it->second);
    else
      out = AsymmetricMatrix(it->second);
  } else if (expr.op == "product") {
    out = EvaluateTerm(expr.args.front(), data);
    for (std::size_t k = 1; k < expr.args.size(); ++k)
      out = ProductMatrix(out, EvaluateTerm(expr.args[k], data));
  } else {
    throw Error(fmt::format("unknown operator '{}'", expr.op));
  }
  if (out.size() != data.nodes().size())
    throw Error(fmt::format("term '{}' does not match the node set", expr.ToString()));
  out.set_label(expr.ToString());
  return out;
}

DyadicMatrix EvaluateTerm(std::string_view text, const Dataset& data) {
  return EvaluateTerm(ParseTerm(text), data);
}

Dataset Dataset::RestrictToSample(const std::string& sample) const {
  if (!nodes().FindSample(sample))
    throw Error(fmt::format("unknown sample '{}'", sample));
  Dataset out;
  std::vector<std::size_t> keep;
  out.panel = panel.RestrictToSample(sample, &keep);
  out.source_panel = source_panel ? source_panel : std::make_shared<const NodePanel>(panel);
  for (const auto& [name, net] : networks) {
    NominationNetwork sub(keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) {
      sub.SetRespondent(a, net.Respondent(keep[a]));
      for (std::size_t b = 0; b < keep.size(); ++b)
        if (a != b && net.Tie(keep[a], keep[b])) sub.AddTie(a, b);
    }
    out.networks.emplace(name, std::move(sub));
  }
  for (const auto& [name, m] : dyadic) {
    DyadicMatrix sub(keep.size(), m.label(), m.symmetric());
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = 0; b < keep.size(); ++b) {
        if (a == b) continue;
        if (m.missing(keep[a], keep[b]))
          sub.SetMissing(a, b);
        else
          sub.Set(a, b, m.value(keep[a], keep[b]));
      }
    out.dyadic.emplace(name, std::move(sub));
  }
  return out;
}

}  // namespace qapnet
