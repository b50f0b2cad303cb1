#include "quadric/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quadric {

void CheckReport::expect_below(std::string name, double residual, double tol) {
  checks.push_back({std::move(name), residual, tol, residual <= tol});
}

void CheckReport::expect_above(std::string name, double residual, double tol) {
  checks.push_back({std::move(name), residual, tol, residual > tol, true});
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (const auto& c : other.checks)
    checks.push_back({prefix + c.name, c.residual, c.tol, c.pass, c.lower_bound});
}

std::size_t CheckReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
}

Json to_json(const CheckReport& report) {
  Json doc;
  doc["command"] = report.command;
  doc["params"] = report.params;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json entry;
    entry["name"] = c.name;
    // Infinite residuals (e.g. a multiplicity mismatch) are not valid JSON.
    if (std::isfinite(c.residual))
      entry["residual"] = c.residual;
    else
      entry["residual"] = nullptr;
    entry["tol"] = c.tol;
    entry["pass"] = c.pass;
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  doc["summary"] = {{"total", report.checks.size()},
                    {"passed", report.passed()},
                    {"failed", report.failed()}};
  doc["seed"] = report.seed;
  doc["version"] = report.version;
  if (!report.result.empty()) doc["result"] = report.result;
  return doc;
}

std::string dump(const CheckReport& report) { return to_json(report).dump(2) + "\n"; }

Json hypersurface_to_json(const HypersurfaceData& h) {
  Json doc;
  doc["m"] = h.m();
  doc["N"] = std::vector<double>(h.N.data(), h.N.data() + h.N.size());
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < h.S.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(h.S.cols()));
    for (Eigen::Index j = 0; j < h.S.cols(); ++j) row[static_cast<std::size_t>(j)] = h.S(i, j);
    rows.push_back(row);
  }
  doc["S"] = std::move(rows);
  doc["alpha"] = h.alpha;
  doc["q_xi"] = h.q_xi;
  return doc;
}

namespace {

std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  // nlohmann reports the byte just past the offending token.
  if (column > 1) --column;
  std::ostringstream out;
  out << "line " << line << ", column " << column;
  return out.str();
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw InputError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

double number(const Json& value, const std::string& what) {
  if (!value.is_number()) throw InputError(what + " is not a number");
  return value.get<double>();
}

}  // namespace

HypersurfaceData hypersurface_from_json_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::ostringstream msg;
    msg << "malformed JSON at " << position_of(text, e.byte) << ": " << e.what();
    throw InputError(msg.str());
  }
  return hypersurface_from_json(doc);
}

HypersurfaceData hypersurface_from_json(const Json& doc) {
  const Json& m_field = field(doc, "m");
  if (!m_field.is_number_integer()) throw InputError("m is not an integer");
  const int m = m_field.get<int>();
  const TangentModel model(m);
  const int n = model.dim();

  const Json& n_field = field(doc, "N");
  if (!n_field.is_array() || static_cast<int>(n_field.size()) != n) {
    std::ostringstream msg;
    msg << "N must be an array of " << n << " numbers";
    throw InputError(msg.str());
  }
  Vector N(n);
  for (int i = 0; i < n; ++i) N[i] = number(n_field[static_cast<std::size_t>(i)], "N entry");

  const Json& s_field = field(doc, "S");
  if (!s_field.is_array() || static_cast<int>(s_field.size()) != n) {
    std::ostringstream msg;
    msg << "S must be a " << n << "x" << n << " array";
    throw InputError(msg.str());
  }
  Operator S(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = s_field[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      std::ostringstream msg;
      msg << "S row " << i << " must hold " << n << " numbers";
      throw InputError(msg.str());
    }
    for (int j = 0; j < n; ++j) S(i, j) = number(row[static_cast<std::size_t>(j)], "S entry");
  }

  InduceOptions options;
  if (doc.contains("q_xi")) options.q_xi = number(doc.at("q_xi"), "q_xi");
  HypersurfaceData h = induce_from_normal(model, N, S, options);

  if (doc.contains("alpha")) {
    const double stored = number(doc.at("alpha"), "alpha");
    if (std::abs(stored - h.alpha) > 1e-9 * std::max(1.0, std::abs(h.alpha))) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "stored alpha = " << stored << " disagrees with g(S xi, xi) = " << h.alpha;
      throw InputError(msg.str());
    }
  }
  return h;
}

}  // namespace quadric
