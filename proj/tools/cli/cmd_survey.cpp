#include <charconv>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "common.hpp"
#include "podseg/error.hpp"
#include "podseg/stats.hpp"
#include "podseg/survey.hpp"

namespace podseg::cli {

namespace {

struct Variables {
  std::vector<std::string> names;                        // column order
  std::map<std::string, std::vector<double>> by_segment;  // segment_id -> values
};

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, delim)) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == delim) out.emplace_back();
  return out;
}

// Delimited table with a segment_id column and one numeric column per covariate.
Variables load_variables(const std::string& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::FormatError, path + ": empty variables file");
  const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
  const auto header = split_fields(line, delim);
  std::size_t id_col = header.size();
  Variables vars;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "segment_id") {
      id_col = c;
    } else {
      vars.names.push_back(header[c]);
    }
  }
  if (id_col == header.size()) throw Error(ErrorCode::FormatError, path + ": missing segment_id column");

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line, delim);
    const std::string where = path + ":" + std::to_string(line_no);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::FormatError, where + ": expected " + std::to_string(header.size()) + " fields");
    }
    std::vector<double> values;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c == id_col) continue;
      double v = 0.0;
      const auto& f = fields[c];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::FormatError, where + ": '" + f + "' in column " + header[c] + " is not a number");
      }
      values.push_back(v);
    }
    if (!vars.by_segment.emplace(fields[id_col], std::move(values)).second) {
      throw Error(ErrorCode::DuplicateRow, where + ": segment '" + fields[id_col] + "' listed twice");
    }
  }
  return vars;
}

}  // namespace

int cmd_survey(const SurveyOptions& o, Context& ctx) {
  RunManifest manifest = make_manifest("survey");
  manifest.add_input(o.survey);
  const SurveyTable table = load_survey(o.survey);
  if (table.empty()) throw Error(ErrorCode::EmptyInput, o.survey + " has no rows");
  Variables vars;
  if (!o.variables.empty()) {
    manifest.add_input(o.variables);
    vars = load_variables(o.variables);
  }
  manifest.config["significance_level"] = kSignificanceLevel;

  Report report(std::move(manifest));
  const auto sources = table.sources();
  std::map<std::string, SourceScores> scores;
  for (const auto& source : sources) {
    const SourceScores s = source_scores(table, source);
    const double r = relevancy(table, source);
    report.add(Json{{"record", "relevancy"},
                    {"title_source", source},
                    {"segments", s.totals.size()},
                    {"participants", s.participants},
                    {"relevancy", r}});
    scores.emplace(source, s);
  }

  std::size_t skipped = 0;
  for (std::size_t v = 0; v < vars.names.size(); ++v) {
    for (const auto& source : sources) {
      const SourceScores& s = scores.at(source);
      std::vector<double> xs, ys;
      for (const auto& [segment, total] : s.totals) {
        auto it = vars.by_segment.find(segment);
        if (it == vars.by_segment.end()) continue;
        xs.push_back(it->second[v]);
        ys.push_back(static_cast<double>(total) / static_cast<double>(s.participants));
      }
      Json rec;
      rec["record"] = "correlation";
      rec["variable"] = vars.names[v];
      rec["title_source"] = source;
      rec["n"] = xs.size();
      try {
        const Correlation c = pearson(xs, ys);
        rec["r"] = c.r;
        rec["p"] = c.p_value;
        rec["significant"] = c.significant();
      } catch (const Error& e) {
        ++skipped;
        rec["error"] = std::string(to_string(e.code()));
        rec["message"] = e.what();
      }
      report.add(std::move(rec));
    }
  }

  emit(ctx, report, o.report, [&](std::ostream& out) {
    out << std::fixed << std::setprecision(2);
    for (const auto& rec : report.records()) {
      if (rec["record"] == "relevancy") {
        out << "R_" << rec["title_source"].get<std::string>() << " = " << rec["relevancy"].get<double>() << "\n";
      }
    }
    if (!vars.names.empty()) out << "\n" << std::left << std::setw(24) << "variable";
    if (!vars.names.empty()) {
      for (const auto& source : sources) out << std::setw(12) << source;
      out << "\n";
    }
    out << std::setprecision(3);
    std::size_t i = sources.size();
    const auto& records = report.records();
    for (const auto& name : vars.names) {
      out << std::setw(24) << name;
      for (std::size_t s = 0; s < sources.size(); ++s, ++i) {
        const auto& rec = records[i];
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(3);
        if (rec.contains("r")) {
          cell << rec["r"].get<double>() << (rec["significant"].get<bool>() ? "*" : "");
        } else {
          cell << "n/a";
        }
        out << std::setw(12) << cell.str();
      }
      out << "\n";
    }
    out.unsetf(std::ios::floatfield);
  });
  if (skipped > 0) {
    ctx.err << "podseg survey: " << skipped << " correlations could not be computed\n";
    return kWarnings;
  }
  return kOk;
}

}  // namespace podseg::cli
