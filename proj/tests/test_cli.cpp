#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "helpers.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string &args) {
  const std::string cmd = std::string(STEGOMARK_CLI_PATH) + " " + args + " 2>&1";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

fs::path tmp_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "stegomark-cli-test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path cover_path() { return testutil::repo_root() / "data" / "cover.txt"; }

std::string write_tmp(const std::string &name, const std::string &content) {
  const fs::path p = tmp_dir() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p.string();
}

}  // namespace

TEST_CASE("embed and extract roundtrip through files") {
  const std::string stego = (tmp_dir() / "stego.txt").string();
  const RunResult e = run("embed -s covertsys -i " + cover_path().string() +
                          " -o " + stego + " -m \"Secret Message\"");
  CHECK(e.exit_code == 0);
  const RunResult x = run("extract -s covertsys -i " + stego);
  CHECK(x.exit_code == 0);
  CHECK(x.output == "Secret Message\n");
}

TEST_CASE("aitsteg with a fixed timestamp is byte-stable") {
  const std::string a = (tmp_dir() / "a.txt").string();
  const std::string b = (tmp_dir() / "b.txt").string();
  for (const std::string &out : {a, b}) {
    const RunResult r = run("embed -s aitsteg --timestamp 1700000000 -i " +
                            cover_path().string() + " -o " + out + " -m hi");
    CHECK(r.exit_code == 0);
  }
  CHECK(testutil::read_file(a) == testutil::read_file(b));
}

TEST_CASE("detect exit codes distinguish clean from watermarked") {
  const RunResult clean = run("detect -i " + cover_path().string());
  CHECK(clean.exit_code == 0);
  CHECK(clean.output == "clean\n");

  const std::string stego = (tmp_dir() / "det.txt").string();
  run("embed -s snow -i " + cover_path().string() + " -o " + stego +
      " -m \"Secret Message\"");
  const RunResult marked = run("detect -i " + stego);
  CHECK(marked.exit_code == 1);
  CHECK(marked.output.rfind("watermarked\n", 0) == 0);
  CHECK(marked.output.find("snow") != std::string::npos);

  const RunResult json = run("detect --json -i " + stego);
  CHECK(json.exit_code == 1);
  CHECK(json.output.find("\"verdict\"") != std::string::npos);
}

TEST_CASE("capacity lists all schemes") {
  const RunResult r = run("capacity -i " + cover_path().string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("aitsteg\tunlimited") != std::string::npos);
  CHECK(r.output.find("shazzad\t") != std::string::npos);
  CHECK(r.output.find("innamark\t792") != std::string::npos);  // 198 spaces * 4
}

TEST_CASE("error paths map to documented exit codes") {
  const std::string tiny = write_tmp("tiny.txt", "one two three");
  // Payload does not fit -> capacity class.
  const RunResult cap = run("embed -s lookalikes -i " + tiny +
                            " -m \"Secret Message\"");
  CHECK(cap.exit_code == 2);
  // Missing input file -> IO class.
  const RunResult io = run("extract -s snow -i /nonexistent/file.txt");
  CHECK(io.exit_code == 3);
  // Unknown scheme -> usage class.
  const RunResult usage = run("extract -s nosuch -i " + cover_path().string());
  CHECK(usage.exit_code == 4);
  // Clean text -> no watermark.
  const RunResult none = run("extract -s snow -i " + cover_path().string());
  CHECK(none.exit_code == 5);
  // BOM input is rejected as usage error.
  const std::string bom = write_tmp("bom.txt", "\xEF\xBB\xBFsome text here");
  const RunResult rej = run("detect -i " + bom);
  CHECK(rej.exit_code == 4);
}

TEST_CASE("corrupted carrier yields the corrupt exit code") {
  const std::string stego = (tmp_dir() / "corrupt.txt").string();
  run("embed -s stegcloak -i " + cover_path().string() + " -o " + stego +
      " -m \"Secret Message\"");
  std::string text = testutil::read_file(stego);
  // Remove one three-byte zero-width scalar, breaking the run length.
  const std::size_t pos = text.find("\xE2\x80\x8B");
  REQUIRE(pos != std::string::npos);
  text.erase(pos, 3);
  const std::string damaged = write_tmp("damaged.txt", text);
  const RunResult r = run("extract -s stegcloak -i " + damaged);
  CHECK(r.exit_code == 6);
}

TEST_CASE("experiment and report run against shipped fixtures") {
  const fs::path probe = testutil::repo_root() / "data" / "probe";
  const std::string records = (tmp_dir() / "records.jsonl").string();
  const RunResult e = run("experiment -c " + (probe / "experiment.json").string() +
                          " -e 2 --fixtures " + (probe / "fixtures.json").string() +
                          " -o " + records);
  CHECK(e.exit_code == 0);
  const RunResult rep = run("report -r " + records + " -f csv");
  CHECK(rep.exit_code == 0);
  CHECK(rep.output.rfind("model,scheme,label,count\n", 0) == 0);
  const RunResult table = run("report -r " + records + " -f table");
  CHECK(table.exit_code == 0);
  CHECK(table.output.find("GPT-5") != std::string::npos);
}

TEST_CASE("live experiment without api key fails with transport code") {
  const fs::path probe = testutil::repo_root() / "data" / "probe";
  unsetenv("OPENAI_API_KEY");
  const RunResult r = run("experiment -c " + (probe / "experiment.json").string() +
                          " -e 2 -o " + (tmp_dir() / "live.jsonl").string());
  // Per-cell transport errors are recorded, not fatal; the run succeeds
  // and every cell carries an error marker.
  CHECK(r.exit_code == 0);
  const std::string lines = testutil::read_file(tmp_dir() / "live.jsonl");
  CHECK(lines.find("TransportError") != std::string::npos);
}
