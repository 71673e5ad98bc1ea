// Copyright 2026 The Shah Project Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the installed binary end to end. The test runner exports
// SHAH_CLI with the binary's path; without it these tests are skipped
// (e.g. when the test executable is run by hand).

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "golden_vectors.hpp"
#include "shah/keystream.hpp"

#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;

struct CliFixture {
  std::string binary;
  fs::path dir;

  CliFixture() {
    const char* env = std::getenv("SHAH_CLI");
    if (env != nullptr) binary = env;
    dir = fs::temp_directory_path() / ("shah_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~CliFixture() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  int run(const std::string& args, const std::string& stdout_file = "",
          const std::string& stdin_file = "") const {
    std::string cmd = binary + " " + args;
    if (!stdin_file.empty()) cmd += " < " + stdin_file;
    cmd += stdout_file.empty() ? " > /dev/null" : " > " + stdout_file;
    cmd += " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
  }

  std::string stderr_text() const { return slurp(path("stderr.txt")); }

  static std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  static void spit(const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    out << text;
  }
};

}  // namespace

TEST_CASE_METHOD(CliFixture, "keygen writes the default key verbatim", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  REQUIRE(run("keygen --default -o " + path("default.key")) == 0);
  REQUIRE(slurp(path("default.key")) == shah::format_key(shah::kDefaultKey));
}

TEST_CASE_METHOD(CliFixture, "seeded keygen is deterministic and reloadable", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  REQUIRE(run("keygen --seed 7 -o " + path("a.key")) == 0);
  REQUIRE(run("keygen --seed 7 -o " + path("b.key")) == 0);
  const std::string a = slurp(path("a.key"));
  REQUIRE(a == slurp(path("b.key")));

  const shah::Key key = shah::parse_key(a);
  REQUIRE(shah::format_key(key) == a);  // 17-digit round trip
}

TEST_CASE_METHOD(CliFixture, "hash prints a stable uppercase digest", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  spit(path("msg.txt"), "A");
  REQUIRE(run("keygen --default -o " + path("default.key")) == 0);

  REQUIRE(run("hash --n 128 --key " + path("default.key") + " " + path("msg.txt"),
              path("digest1.txt")) == 0);
  const std::string line = slurp(path("digest1.txt"));
  REQUIRE(line == std::string(shah::golden::kDigestA128) + "\n");

  REQUIRE(run("hash --n 128 --key " + path("default.key") + " " + path("msg.txt"),
              path("digest2.txt")) == 0);
  REQUIRE(slurp(path("digest2.txt")) == line);

  // stdin variant
  REQUIRE(run("hash --n 128 -", path("digest3.txt"), path("msg.txt")) == 0);
  REQUIRE(slurp(path("digest3.txt")) == line);
}

TEST_CASE_METHOD(CliFixture, "hash rejects bad sizes, keys and paths", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  spit(path("msg.txt"), "A");
  REQUIRE(run("hash --n 100 " + path("msg.txt")) == 2);
  REQUIRE(stderr_text().find("unsupported digest size") != std::string::npos);

  spit(path("bad.key"), "not a key\n");
  REQUIRE(run("hash --n 128 --key " + path("bad.key") + " " + path("msg.txt")) == 2);

  spit(path("far.key"), "50.0 0.1 0.1 0.1 3500 3500\n");
  REQUIRE(run("hash --n 128 --key " + path("far.key") + " " + path("msg.txt")) == 2);

  REQUIRE(run("hash --n 128 " + path("missing.txt")) == 4);

  // In-box but off-attractor seeds diverge at run time.
  spit(path("diverge.key"), "1.4 1.4 1.4 1.4 3500 3500\n");
  REQUIRE(run("hash --n 128 --key " + path("diverge.key") + " " + path("msg.txt")) == 3);
}

TEST_CASE_METHOD(CliFixture, "randgen writes exact deterministic bitstream files", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  REQUIRE(run("randgen --bytes 125000 -o " + path("r1.bin")) == 0);
  REQUIRE(fs::file_size(path("r1.bin")) == 125000);

  REQUIRE(run("randgen --bits 1000000 -o " + path("r2.bin")) == 0);
  REQUIRE(fs::file_size(path("r2.bin")) == 125000);
  REQUIRE(slurp(path("r1.bin")) == slurp(path("r2.bin")));

  REQUIRE(run("randgen --bits 12 -o " + path("r3.bin")) == 2);
  REQUIRE(run("randgen -o " + path("r4.bin")) == 2);

  spit(path("diverge.key"), "1.4 1.4 1.4 1.4 3500 3500\n");
  REQUIRE(run("randgen --bytes 8 --key " + path("diverge.key") + " -o " + path("r5.bin")) == 3);
  REQUIRE(run("randgen --bytes 8 -o " + path("no/such/dir/r6.bin")) == 4);
}

TEST_CASE_METHOD(CliFixture, "orbit emits fixed points and reports divergence", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  REQUIRE(run("orbit --x0 0 --y0 0 --count 10 -o " + path("orbit.txt")) == 0);
  std::istringstream lines(slurp(path("orbit.txt")));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    REQUIRE(line == "0 0");
    ++count;
  }
  REQUIRE(count == 10);

  REQUIRE(run("orbit --params 100 -0.6013 2.0 0.5 --count 1000 -o " + path("o2.txt")) == 3);
  REQUIRE(stderr_text().find("diverged at iteration") != std::string::npos);
}

TEST_CASE_METHOD(CliFixture, "analyze diffusion writes the six statistics", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  REQUIRE(run("analyze diffusion --type A --n 128 --trials 8 --seed 1 -o " +
              path("diff.txt") + " --csv " + path("diff.csv")) == 0);
  const std::string text = slurp(path("diff.txt"));
  for (const char* field : {"b_min=", "b_max=", "b_mean=", "p_mean_percent=", "delta_b=",
                            "delta_p_percent="}) {
    INFO(field);
    REQUIRE(text.find(field) != std::string::npos);
  }
  REQUIRE(slurp(path("diff.csv")).rfind("statistic,value\n", 0) == 0);
}

TEST_CASE_METHOD(CliFixture, "full-scale diffusion run centers on fifty percent", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  REQUIRE(run("analyze diffusion --type A --n 128 --trials 10000 --seed 1 -o " +
              path("full.txt")) == 0);
  const std::string text = slurp(path("full.txt"));
  const auto pos = text.find("p_mean_percent=");
  REQUIRE(pos != std::string::npos);
  const double p_mean = std::stod(text.substr(pos + 15));
  REQUIRE(p_mean >= 49.5);
  REQUIRE(p_mean <= 50.5);
}

TEST_CASE_METHOD(CliFixture, "default orbit completes the full point file", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  REQUIRE(run("orbit -o " + path("attractor.txt")) == 0);
  std::istringstream lines(slurp(path("attractor.txt")));
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) ++count;
  REQUIRE(count == 100'001);
}

TEST_CASE_METHOD(CliFixture, "analyze collision histogram sums to the trials", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  REQUIRE(run("analyze collision --type B --n 128 --trials 20 --seed 1 --short -o " +
              path("coll.txt")) == 0);
  const std::string text = slurp(path("coll.txt"));
  long long total = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("hits_", 0) == 0) total += std::stoll(line.substr(line.find('=') + 1));
  }
  REQUIRE(total == 20);
}

TEST_CASE_METHOD(CliFixture, "analyze ent consumes randgen output", "[cli]") {
  if (binary.empty()) SKIP("SHAH_CLI not set");
  REQUIRE(run("randgen --bytes 65536 -o " + path("bytes.bin")) == 0);
  REQUIRE(run("analyze ent --input " + path("bytes.bin") + " -o " + path("ent.txt")) == 0);
  const std::string text = slurp(path("ent.txt"));
  REQUIRE(text.find("entropy_bits_per_byte=") != std::string::npos);
  REQUIRE(run("analyze ent --input " + path("nonexistent.bin")) == 4);
}
