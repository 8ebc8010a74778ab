#include "podseg/survey.hpp"

#include <tuple>

#include "podseg/error.hpp"

namespace podseg {

void SurveyTable::add(SurveyRow row) {
  if (row.score < 1 || row.score > 5) {
    throw Error(ErrorCode::BadScore, "score " + std::to_string(row.score) + " outside 1..5");
  }
  auto key = std::make_tuple(row.segment_id, row.title_source, row.participant_id);
  if (!keys_.insert(std::move(key)).second) {
    throw Error(ErrorCode::DuplicateRow, "duplicate row (" + row.segment_id + ", " + row.title_source + ", " +
                                             row.participant_id + ")");
  }
  rows_.push_back(std::move(row));
}

std::vector<std::string> SurveyTable::sources() const {
  std::set<std::string> seen;
  for (const auto& row : rows_) seen.insert(row.title_source);
  return {seen.begin(), seen.end()};
}

SourceScores source_scores(const SurveyTable& table, std::string_view title_source) {
  std::set<std::string> participants;
  std::set<std::string> segments;
  SourceScores out;
  for (const auto& row : table.rows()) {
    if (row.title_source != title_source) continue;
    participants.insert(row.participant_id);
    segments.insert(row.segment_id);
    out.totals[row.segment_id] += row.score;
  }
  if (segments.empty()) {
    throw Error(ErrorCode::MissingScores, "no rows for title source '" + std::string(title_source) + "'");
  }
  out.participants = participants.size();

  std::map<std::string, std::size_t> per_segment;
  for (const auto& row : table.rows()) {
    if (row.title_source == title_source) ++per_segment[row.segment_id];
  }
  for (const auto& [segment, count] : per_segment) {
    if (count != out.participants) {
      throw Error(ErrorCode::MissingScores, "segment '" + segment + "' has " + std::to_string(count) + " of " +
                                                std::to_string(out.participants) + " scores for '" +
                                                std::string(title_source) + "'");
    }
  }
  return out;
}

double relevancy(const SurveyTable& table, std::string_view title_source) {
  const SourceScores scores = source_scores(table, title_source);
  long long total = 0;
  for (const auto& [segment, sum] : scores.totals) total += sum;
  return static_cast<double>(total) /
         (static_cast<double>(scores.totals.size()) * static_cast<double>(scores.participants));
}

}  // namespace podseg
