#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace podseg {

struct SurveyRow {
  std::string segment_id;
  std::string title_source;  // human, t5, bart, pegasus, ...
  std::string participant_id;
  int score = 0;             // 1..5 Likert

  bool operator==(const SurveyRow&) const = default;
};

// Per-participant relevancy ratings. Scores are 1..5 and each
// (segment, source, participant) triple appears at most once.
class SurveyTable {
 public:
  // Throws BadScore or DuplicateRow.
  void add(SurveyRow row);

  const std::vector<SurveyRow>& rows() const { return rows_; }
  std::vector<std::string> sources() const;
  bool empty() const { return rows_.empty(); }

 private:
  std::vector<SurveyRow> rows_;
  std::set<std::tuple<std::string, std::string, std::string>> keys_;
};

struct SourceScores {
  std::size_t participants = 0;
  // Summed score per segment: score(S_i) over all participants.
  std::map<std::string, long long> totals;
};

// Throws MissingScores when a participant of the source skipped a segment.
SourceScores source_scores(const SurveyTable& table, std::string_view title_source);

// Average relevancy: summed scores over (segments * participants).
double relevancy(const SurveyTable& table, std::string_view title_source);

}  // namespace podseg
