#include <doctest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "fixtures.hpp"
#include "podseg/corpus.hpp"
#include "stub_service.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "podseg");
  std::ostringstream out, err;
  const int code = podseg::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const fs::path& p, const std::string& s) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<json> lines(const std::string& jsonl) {
  std::vector<json> out;
  std::istringstream in(jsonl);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

std::vector<json> records(const std::string& jsonl, const std::string& kind) {
  std::vector<json> out;
  for (auto& j : lines(jsonl)) {
    if (j.value("record", "") == kind) out.push_back(j);
  }
  return out;
}

}  // namespace

TEST_CASE("segment with tiling defaults ends at the last sentence") {
  fixture::TempDir dir("cli-seg");
  const std::string text = fixture::two_topic_text(3);
  write(dir / "in" / "ep.txt", text);
  const auto r = run({"segment", (dir / "in" / "ep.txt").string(), "-o", (dir / "out").string()});
  REQUIRE(r.code == 0);
  std::istringstream seg_text(slurp(dir / "out" / "ep.seg"));
  const auto seg = podseg::parse_annotations(seg_text);
  CHECK(seg.total() == podseg::tokenize(text).size());
  CHECK(seg.boundaries().back() == seg.total());
  CHECK(fs::exists(dir / "out" / "segment_report.jsonl"));
  CHECK(fs::exists(dir / "out" / "segment_report.jsonl.manifest.json"));
}

TEST_CASE("textsplit needs an embeddings file") {
  fixture::TempDir dir("cli-ts");
  write(dir / "ep.txt", "One two. Three four.");
  const auto r = run({"segment", (dir / "ep.txt").string(), "--segmenter", "textsplit", "-o", (dir / "o").string()});
  CHECK(r.code == 3);
  CHECK(run({"segment", (dir / "ep.txt").string(), "--segmenter", "nope", "-o", (dir / "o").string()}).code == 3);
  CHECK(run({"segment", (dir / "missing.txt").string(), "-o", (dir / "o").string()}).code == 2);
  CHECK(run({"frobnicate"}).code == 3);
}

TEST_CASE("reports are byte-identical across runs") {
  fixture::TempDir dir("cli-det");
  write(dir / "a.txt", fixture::two_topic_text(1));
  write(dir / "b.txt", fixture::two_topic_text(2));
  for (const char* out : {"o1", "o2"}) {
    const auto r = run({"segment", (dir / "a.txt").string(), (dir / "b.txt").string(), "-o", (dir / out).string(),
                        "--report", (dir / (std::string(out) + ".jsonl")).string(), "--w", "20"});
    REQUIRE(r.code == 0);
  }
  CHECK(slurp(dir / "o1.jsonl") == slurp(dir / "o2.jsonl"));
  CHECK(slurp(dir / "o1" / "a.seg") == slurp(dir / "o2" / "a.seg"));
  const auto manifest = lines(slurp(dir / "o1.jsonl")).front();
  CHECK(manifest["record"] == "manifest");
  CHECK(manifest["inputs"].size() == 2);
  CHECK_FALSE(manifest.contains("timestamp"));
  CHECK(json::parse(slurp(dir / "o1.jsonl.manifest.json")).contains("timestamp"));
}

TEST_CASE("evaluate scores annotation directories") {
  fixture::TempDir dir("cli-eval");
  write(dir / "ref" / "e.seg", "N=6\n3\n6\n");
  write(dir / "hyp" / "e.seg", "N=6\n6\n");
  write(dir / "same" / "e.seg", "N=6\n3\n6\n");
  const std::string ref = (dir / "ref").string();

  auto r = run({"--format", "jsonl", "evaluate", "--hypotheses", (dir / "same").string(), "--references", ref});
  REQUIRE(r.code == 0);
  auto summary = records(r.out, "summary").at(0);
  CHECK(summary["mean_pk"] == 0.0);
  CHECK(summary["mean_wd"] == 0.0);
  CHECK_FALSE(summary.contains("baseline"));

  r = run({"evaluate", "--hypotheses", (dir / "hyp").string(), "--references", ref, "--window", "2", "--format",
           "jsonl"});
  REQUIRE(r.code == 0);
  summary = records(r.out, "summary").at(0);
  CHECK(summary["mean_pk"] == 0.5);
  CHECK(summary["mean_wd"] == 0.5);

  r = run({"--format", "jsonl", "evaluate", "--hypotheses", (dir / "hyp").string(), "--references", ref,
           "--baseline", "--iterations", "4"});
  REQUIRE(r.code == 0);
  summary = records(r.out, "summary").at(0);
  REQUIRE(summary.contains("baseline"));
  CHECK(summary["baseline"]["iterations"] == 4);

  write(dir / "hyp" / "extra.seg", "N=6\n6\n");
  CHECK(run({"evaluate", "--hypotheses", (dir / "hyp").string(), "--references", ref}).code == 2);
  CHECK(run({"evaluate", "--hypotheses", (dir / "same").string(), "--references", ref, "--window", "zero"}).code ==
        3);
}

TEST_CASE("synth then tune with a singleton grid") {
  fixture::TempDir dir("cli-tune");
  const std::string corpus = (dir / "corpus").string();
  REQUIRE(run({"synth", "-o", corpus, "--episodes", "4", "--seed", "5"}).code == 0);
  const auto r = run({"--format", "jsonl", "tune", corpus, "--w", "20", "--k", "5", "--f", "0"});
  REQUIRE(r.code == 0);
  const auto configs = records(r.out, "config");
  REQUIRE(configs.size() == 1);
  const auto best = records(r.out, "best");
  REQUIRE(best.size() == 1);
  CHECK(records(r.out, "eval").size() == 4);
  CHECK(run({"tune", corpus, "--segmenter", "textsplit"}).code == 3);
  CHECK(run({"tune", corpus, "--f", "2"}).code == 3);
}

TEST_CASE("title against the stub service") {
  fixture::TempDir dir("cli-title");
  write(dir / "ep.txt", "Alpha one here. Alpha two here. Beta one now. Beta two now. Gamma one. Gamma two.");
  write(dir / "ep.seg", "N=6\n2\n4\n6\n");
  const std::string t = (dir / "ep.txt").string(), a = (dir / "ep.seg").string();

  podseg::stub::StubService healthy;
  healthy.set_default({.words = 2});
  {
    podseg::stub::StubServer server(healthy);
    const auto r = run({"--format", "jsonl", "title", t, a, "--endpoint", server.endpoint(), "--backoff-ms", "1"});
    REQUIRE(r.code == 0);
    const auto segs = records(r.out, "segment");
    REQUIRE(segs.size() == 3);
    CHECK(segs[0]["title"] == "Alpha one");
    CHECK(segs[1]["title"] == "Beta one");
    CHECK(segs[1]["first_sentence"] == 3);
    CHECK(segs[1]["last_sentence"] == 4);
  }

  podseg::stub::StubService partial;
  partial.set_default({.words = 2});
  partial.add_rule("Beta", {{.status = 503}});
  {
    podseg::stub::StubServer server(partial);
    const auto r = run({"--format", "jsonl", "title", t, a, "--endpoint", server.endpoint(), "--backoff-ms", "1",
                        "--retries", "1"});
    CHECK(r.code == 1);
    const auto segs = records(r.out, "segment");
    REQUIRE(segs.size() == 3);
    CHECK(segs[1]["error"] == "ServiceUnavailable");
    CHECK(segs[1]["attempts"] == 2);
    CHECK(segs[2]["title"] == "Gamma one.");
  }

  CHECK(run({"title", t, a}).code == 3);
  write(dir / "short.seg", "N=4\n4\n");
  CHECK(run({"title", t, (dir / "short.seg").string(), "--endpoint", "http://127.0.0.1:1/x"}).code == 2);
}

TEST_CASE("survey relevancy and correlations") {
  fixture::TempDir dir("cli-survey");
  write(dir / "survey.csv",
        "segment_id,title_source,participant_id,score\n"
        "s1,t5,p1,4\ns1,t5,p2,5\n");
  auto r = run({"--format", "jsonl", "survey", (dir / "survey.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(records(r.out, "relevancy").at(0)["relevancy"] == 4.5);

  std::string rows = "segment_id,title_source,participant_id,score\n";
  std::string vars = "segment_id,length\n";
  for (int s = 1; s <= 5; ++s) {
    rows += "s" + std::to_string(s) + ",bart,p1," + std::to_string(s) + "\n";
    vars += "s" + std::to_string(s) + "," + std::to_string(100 - 10 * s) + "\n";
  }
  write(dir / "linear.csv", rows);
  write(dir / "vars.csv", vars);
  r = run({"--format", "jsonl", "survey", (dir / "linear.csv").string(), "--variables", (dir / "vars.csv").string()});
  REQUIRE(r.code == 0);
  const auto corr = records(r.out, "correlation").at(0);
  CHECK(corr["r"].get<double>() == doctest::Approx(-1.0));
  CHECK(corr["significant"] == true);

  r = run({"survey", (dir / "linear.csv").string(), "--variables", (dir / "vars.csv").string()});
  CHECK(r.out.find('*') != std::string::npos);

  write(dir / "gap.csv",
        "segment_id,title_source,participant_id,score\n"
        "s1,t5,p1,4\ns2,t5,p2,5\n");
  CHECK(run({"survey", (dir / "gap.csv").string()}).code == 2);
}
