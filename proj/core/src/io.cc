#include "qapnet/io.h"

#include <cmath>

#include <fmt/format.h>
#include "json.hpp"

#include "qapnet/csv.h"
#include "qapnet/error.h"

namespace qapnet {
namespace {

using nlohmann::json;

std::string Number(double v) {
  if (!std::isfinite(v)) return "";
  return fmt::format("{:.10g}", v);
}

json NumberJson(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void WriteProvenance(std::ostream& out, const Provenance& provenance) {
  for (const auto& [key, value] : provenance) out << "# " << key << '=' << value << '\n';
}

void WriteDyadColumns(std::ostream& out, const NodeSet& nodes,
                      const std::vector<const DyadicMatrix*>& columns,
                      const Provenance& provenance) {
  for (const auto* c : columns)
    if (c->size() != nodes.size()) throw Error("dyad column does not match node set");
  WriteProvenance(out, provenance);
  out << "sample_id,node_a,node_b";
  for (const auto* c : columns) out << ',' << csv::Escape(c->label());
  out << '\n';
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes.group(i) != nodes.group(j)) continue;
      bool interesting = false;
      for (const auto* c : columns)
        if (c->missing(i, j) || c->value(i, j) != 0.0) interesting = true;
      if (!interesting) continue;
      out << csv::Escape(nodes.key(i).sample) << ',' << csv::Escape(nodes.key(i).node) << ','
          << csv::Escape(nodes.key(j).node);
      for (const auto* c : columns) {
        out << ',';
        if (!c->missing(i, j)) out << fmt::format("{}", c->value(i, j));
      }
      out << '\n';
    }
}

std::map<std::string, DyadicMatrix> ReadDyadColumns(std::istream& in, const NodeSet& nodes,
                                                    bool skip_unknown) {
  csv::Reader reader(in);
  auto header = reader.Next();
  if (!header || header->fields.size() < 4 || header->fields[0] != "sample_id" ||
      header->fields[1] != "node_a" || header->fields[2] != "node_b")
    throw Error("dyad file header must start with 'sample_id,node_a,node_b'");
  std::vector<std::string> names(header->fields.begin() + 3, header->fields.end());
  std::vector<DyadicMatrix> columns;
  for (const auto& name : names) columns.emplace_back(nodes.size(), name);

  while (auto row = reader.Next()) {
    const auto& f = row->fields;
    if (f.size() != header->fields.size())
      throw Error(fmt::format("line {}: expected {} fields", row->line, header->fields.size()));
    auto a = nodes.Find(f[0], f[1]);
    auto b = nodes.Find(f[0], f[2]);
    if (!a || !b) {
      if (skip_unknown) continue;
      throw Error(fmt::format("line {}: unknown node '{}' in sample '{}'", row->line,
                              a ? f[2] : f[1], f[0]));
    }
    if (*a == *b) throw Error(fmt::format("line {}: self dyad", row->line));
    for (std::size_t c = 0; c < names.size(); ++c) {
      const auto& field = f[c + 3];
      if (field.empty()) {
        columns[c].SetMissing(*a, *b);
        continue;
      }
      auto v = csv::ParseDouble(field);
      if (!v) throw Error(fmt::format("line {}: bad number '{}'", row->line, field));
      columns[c].Set(*a, *b, *v);
    }
  }
  std::map<std::string, DyadicMatrix> out;
  for (std::size_t c = 0; c < names.size(); ++c) out.emplace(names[c], std::move(columns[c]));
  return out;
}

QapModelSpec ReadModelSpec(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(fmt::format("model spec is not valid JSON: {}", e.what()));
  }
  if (!j.is_object()) throw Error("model spec must be a JSON object");
  QapModelSpec spec;
  try {
    if (j.contains("dependent")) spec.dependent = j.at("dependent").get<std::string>();
    if (j.contains("permutations")) spec.permutations = j.at("permutations").get<std::size_t>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("transform"))
      spec.transform = Transform::Parse(j.at("transform").get<std::string>());
    if (!j.contains("terms") || !j.at("terms").is_array())
      throw Error("model spec needs a 'terms' array");
    for (const auto& t : j.at("terms")) {
      if (t.is_string()) {
        spec.terms.push_back({"", t.get<std::string>()});
      } else if (t.is_object()) {
        spec.terms.push_back({t.value("label", std::string()), t.at("term").get<std::string>()});
      } else {
        throw Error("each term must be a string or {\"label\", \"term\"}");
      }
    }
  } catch (const json::exception& e) {
    throw Error(fmt::format("bad model spec: {}", e.what()));
  }
  spec.Validate();
  return spec;
}

void WriteModelSpec(std::ostream& out, const QapModelSpec& spec) {
  json j;
  j["dependent"] = spec.dependent;
  j["permutations"] = spec.permutations;
  j["seed"] = spec.seed;
  j["transform"] = spec.transform.ToString();
  json terms = json::array();
  for (const auto& t : spec.terms) {
    if (t.label.empty())
      terms.push_back(t.expression);
    else
      terms.push_back({{"label", t.label}, {"term", t.expression}});
  }
  j["terms"] = std::move(terms);
  out << j.dump(2) << '\n';
}

void WriteResultsCsv(std::ostream& out, const QapFit& fit, const Provenance& provenance) {
  WriteProvenance(out, provenance);
  out << "term,estimate,p_one,p_two,e_est,pct_2_5,pct_97_5\n";
  for (const auto& t : fit.terms) {
    out << csv::Escape(t.label);
    if (t.dropped) {
      out << ",,,,,,\n";
      continue;
    }
    out << ',' << Number(t.estimate) << ',' << Number(t.p.one) << ',' << Number(t.p.two) << ','
        << Number(t.e_est) << ',' << Number(t.pct_2_5) << ',' << Number(t.pct_97_5) << '\n';
  }
  out << "\nr2,adj_r2,resid_skewness,n_dyads,permutations,seed\n";
  out << Number(fit.r2) << ',' << Number(fit.adj_r2) << ',' << Number(fit.residual_skewness)
      << ',' << fit.n_dyads << ',' << fit.permutations << ',' << fit.seed << '\n';
}

void WriteResultsJson(std::ostream& out, const QapFit& fit, const Provenance& provenance) {
  json j;
  json config = json::object();
  for (const auto& [k, v] : provenance) config[k] = v;
  j["config"] = std::move(config);
  json terms = json::array();
  for (const auto& t : fit.terms) {
    json row;
    row["term"] = t.label;
    if (t.dropped) {
      row["dropped"] = true;
    } else {
      row["estimate"] = NumberJson(t.estimate);
      row["p_one"] = NumberJson(t.p.one);
      row["p_two"] = NumberJson(t.p.two);
      row["p_upper"] = NumberJson(t.p.upper);
      row["p_lower"] = NumberJson(t.p.lower);
      row["e_est"] = NumberJson(t.e_est);
      row["pct_2_5"] = NumberJson(t.pct_2_5);
      row["pct_97_5"] = NumberJson(t.pct_97_5);
    }
    terms.push_back(std::move(row));
  }
  j["terms"] = std::move(terms);
  j["model"] = {{"r2", NumberJson(fit.r2)},
                {"adj_r2", NumberJson(fit.adj_r2)},
                {"resid_skewness", NumberJson(fit.residual_skewness)},
                {"n_dyads", fit.n_dyads},
                {"permutations", fit.permutations},
                {"failed_replicates", fit.failed_replicates},
                {"seed", fit.seed}};
  out << j.dump(2) << '\n';
}

}  // namespace qapnet
