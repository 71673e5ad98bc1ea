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

// Command-line front end: hashing, key management, keystream export and
// the statistics harness.
//
// Exit codes: 0 ok, 2 invalid key/config, 3 generator error
// (divergence/starvation), 4 I/O failure, 5 keygen exhaustion.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shah/shah.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kGeneratorError = 3;
constexpr int kIoError = 4;
constexpr int kKeygenExhausted = 5;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    const std::string& data = buffer.str();
    return {data.begin(), data.end()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoFailure("read error on " + path);
  const std::string& data = buffer.str();
  return {data.begin(), data.end()};
}

void write_file(const std::string& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw IoFailure("write error on " + path);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  write_file(path, text.data(), text.size());
}

shah::Key load_key(const std::string& key_path) {
  if (key_path.empty()) return shah::kDefaultKey;
  std::ifstream in(key_path);
  if (!in) throw IoFailure("cannot open key file " + key_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return shah::parse_key(buffer.str());
}

shah::DigestSize parse_size(int bits) {
  const auto size = shah::DigestSize::from_bits(bits);
  if (!size) {
    throw CLI::ValidationError("--n", "unsupported digest size " + std::to_string(bits) +
                                          " (expected 128, 160, 256, 512 or 1024)");
  }
  return *size;
}

shah::TrialVariant parse_variant(const std::string& type) {
  if (type == "A" || type == "a") return shah::TrialVariant::kTypeA;
  if (type == "B" || type == "b") return shah::TrialVariant::kTypeB;
  throw CLI::ValidationError("--type", "expected A or B");
}

int run_hash(const std::string& input, const std::string& key_path, int n_bits) {
  const shah::DigestSize size = parse_size(n_bits);
  const shah::Key key = load_key(key_path);
  const std::vector<std::uint8_t> message = read_input(input);
  std::cout << shah::digest_hex(message, key, size) << "\n";
  return kOk;
}

int run_randgen(const std::string& key_path, std::uint64_t bytes, const std::string& out_path) {
  const shah::Key key = load_key(key_path);
  shah::Keystream stream(key);

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + out_path + " for writing");
  constexpr std::uint64_t kChunk = 1 << 20;
  std::uint64_t left = bytes;
  while (left > 0) {
    const auto now = static_cast<std::size_t>(std::min(left, kChunk));
    const std::vector<std::uint8_t> block = stream.export_bytes(now);
    out.write(reinterpret_cast<const char*>(block.data()),
              static_cast<std::streamsize>(block.size()));
    if (!out) throw IoFailure("write error on " + out_path);
    left -= now;
  }
  return kOk;
}

int run_keygen(bool use_default, std::optional<std::uint64_t> seed, const std::string& out_path) {
  shah::Key key;
  if (use_default) {
    key = shah::kDefaultKey;
  } else {
    const std::uint64_t rng_seed = seed ? *seed : std::random_device{}();
    shah::AuxRng rng(rng_seed);
    bool found = false;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      constexpr double shah::Key::* kCoords[] = {&shah::Key::x10, &shah::Key::y10,
                                                 &shah::Key::x20, &shah::Key::y20};
      for (auto coord : kCoords) {
        const double u = static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53;
        key.*coord = -0.9 + 1.8 * u;
      }
      key.m_warmup = shah::kDefaultWarmup;
      key.n_warmup = shah::kDefaultWarmup;
      try {
        shah::Keystream probe(key);  // warm-up doubles as the divergence probe
        found = true;
      } catch (const shah::DivergenceError&) {
      }
    }
    if (!found) {
      std::cerr << "keygen: 100 consecutive candidates diverged\n";
      return kKeygenExhausted;
    }
  }
  write_text(out_path, shah::format_key(key));
  return kOk;
}

int run_orbit(double x0, double y0, const std::vector<double>& params, std::uint64_t count,
              const std::string& out_path) {
  shah::TinkerbellParams map_params = shah::kDefaultParams;
  if (!params.empty()) {
    map_params = {params[0], params[1], params[2], params[3]};
  }

  std::ostringstream out;
  shah::TinkerbellState state{x0, y0, map_params};
  char line[96];
  for (std::uint64_t i = 0; i < count; ++i) {
    std::snprintf(line, sizeof line, "%.17g %.17g\n", state.x, state.y);
    out << line;
    if (i + 1 < count) {
      try {
        state = shah::step(state);
      } catch (const shah::DivergenceError&) {
        std::cerr << "orbit diverged at iteration " << (i + 1) << "\n";
        return kGeneratorError;
      }
    }
  }
  write_text(out_path, out.str());
  return kOk;
}

int run_analyze_diffusion(const std::string& key_path, const std::string& type, int n_bits,
                          std::uint64_t trials, std::uint64_t seed,
                          const std::string& out_path, const std::string& csv_path) {
  const shah::DigestSize size = parse_size(n_bits);
  const shah::TrialVariant variant = parse_variant(type);
  if (trials < 2) throw CLI::ValidationError("--trials", "diffusion needs at least 2 trials");
  const shah::Key key = load_key(key_path);

  const auto report = shah::run_diffusion(key, size, trials, variant, seed);
  write_text(out_path, shah::to_text(report, variant));
  if (!csv_path.empty()) write_text(csv_path, shah::to_csv(report, variant));
  return kOk;
}

int run_analyze_collision(const std::string& key_path, const std::string& type, int n_bits,
                          std::uint64_t trials, std::uint64_t seed, bool short_messages,
                          const std::string& out_path, const std::string& csv_path) {
  const shah::DigestSize size = parse_size(n_bits);
  const shah::TrialVariant variant = parse_variant(type);
  if (trials < 1) throw CLI::ValidationError("--trials", "collision needs at least 1 trial");
  const shah::Key key = load_key(key_path);

  const std::size_t message_bits =
      short_messages ? static_cast<std::size_t>(size.bits())
                     : static_cast<std::size_t>(50) * static_cast<std::size_t>(size.bits());
  const auto report = shah::run_collision_test(key, size, trials, variant, message_bits, seed);
  write_text(out_path, shah::to_text(report, variant));
  if (!csv_path.empty()) write_text(csv_path, shah::to_csv(report, variant));
  return kOk;
}

int run_analyze_ent(const std::string& input, const std::string& out_path,
                    const std::string& csv_path) {
  const std::vector<std::uint8_t> data = read_input(input);
  const auto report = shah::ent_suite(data);
  write_text(out_path, shah::to_text(report));
  if (!csv_path.empty()) write_text(csv_path, shah::to_csv(report));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SHAH chaotic keyed hash and keystream tool"};
  app.require_subcommand(1);

  // hash
  auto* hash_cmd = app.add_subcommand("hash", "hash a file (or - for stdin)");
  std::string hash_input;
  std::string hash_key;
  int hash_bits = 128;
  hash_cmd->add_option("input", hash_input, "input file or -")->required();
  hash_cmd->add_option("--key", hash_key, "key file (default: built-in default key)");
  hash_cmd->add_option("--n", hash_bits, "digest size in bits");

  // keygen
  auto* keygen_cmd = app.add_subcommand("keygen", "write a key file");
  bool keygen_default = false;
  std::optional<std::uint64_t> keygen_seed;
  std::string keygen_out;
  keygen_cmd->add_flag("--default", keygen_default, "emit the built-in default key");
  keygen_cmd->add_option("--seed", keygen_seed, "seed for deterministic key generation");
  keygen_cmd->add_option("-o,--out", keygen_out, "output path (default: stdout)");

  // randgen
  auto* randgen_cmd = app.add_subcommand("randgen", "export raw keystream bytes");
  std::string randgen_key;
  std::string randgen_out;
  std::uint64_t randgen_bytes = 0;
  std::uint64_t randgen_bits = 0;
  randgen_cmd->add_option("--key", randgen_key, "key file");
  randgen_cmd->add_option("--bytes", randgen_bytes, "number of bytes to emit");
  randgen_cmd->add_option("--bits", randgen_bits, "number of bits to emit (multiple of 8)");
  randgen_cmd->add_option("-o,--out", randgen_out, "output path")->required();

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "write raw (x, y) orbit points");
  double orbit_x0 = shah::kDefaultKey.x10;
  double orbit_y0 = shah::kDefaultKey.y10;
  std::vector<double> orbit_params;
  std::uint64_t orbit_count = 100'001;
  std::string orbit_out;
  orbit_cmd->add_option("--x0", orbit_x0, "initial x");
  orbit_cmd->add_option("--y0", orbit_y0, "initial y");
  orbit_cmd->add_option("--params", orbit_params, "map coefficients c1 c2 c3 c4")
      ->expected(4);
  orbit_cmd->add_option("--count", orbit_count, "number of points (seed included)");
  orbit_cmd->add_option("-o,--out", orbit_out, "output path (default: stdout)");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "statistics harness");
  analyze_cmd->require_subcommand(1);

  auto* diffusion_cmd = analyze_cmd->add_subcommand("diffusion", "bit-flip diffusion test");
  std::string diffusion_key, diffusion_type = "A", diffusion_out, diffusion_csv;
  int diffusion_bits = 128;
  std::uint64_t diffusion_trials = 2048;
  std::uint64_t diffusion_seed = 1;
  diffusion_cmd->add_option("--key", diffusion_key, "key file");
  diffusion_cmd->add_option("--type", diffusion_type, "A (fresh message) or B (fixed message)");
  diffusion_cmd->add_option("--n", diffusion_bits, "digest size in bits");
  diffusion_cmd->add_option("--trials", diffusion_trials, "trial count");
  diffusion_cmd->add_option("--seed", diffusion_seed, "auxiliary rng seed");
  diffusion_cmd->add_option("-o,--out", diffusion_out, "text report path (default: stdout)");
  diffusion_cmd->add_option("--csv", diffusion_csv, "CSV report path");

  auto* collision_cmd = analyze_cmd->add_subcommand("collision", "digest collision test");
  std::string collision_key, collision_type = "A", collision_out, collision_csv;
  int collision_bits = 128;
  std::uint64_t collision_trials = 2000;
  std::uint64_t collision_seed = 1;
  bool collision_short = false;
  collision_cmd->add_option("--key", collision_key, "key file");
  collision_cmd->add_option("--type", collision_type, "A or B");
  collision_cmd->add_option("--n", collision_bits, "digest size in bits");
  collision_cmd->add_option("--trials", collision_trials, "trial count");
  collision_cmd->add_option("--seed", collision_seed, "auxiliary rng seed");
  collision_cmd->add_flag("--short", collision_short, "single-block messages (L = n)");
  collision_cmd->add_option("-o,--out", collision_out, "text report path (default: stdout)");
  collision_cmd->add_option("--csv", collision_csv, "CSV report path");

  auto* ent_cmd = analyze_cmd->add_subcommand("ent", "byte-stream statistics");
  std::string ent_input, ent_out, ent_csv;
  ent_cmd->add_option("--input", ent_input, "raw byte file (or - for stdin)")->required();
  ent_cmd->add_option("-o,--out", ent_out, "text report path (default: stdout)");
  ent_cmd->add_option("--csv", ent_csv, "CSV report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*hash_cmd) return run_hash(hash_input, hash_key, hash_bits);
    if (*keygen_cmd) return run_keygen(keygen_default, keygen_seed, keygen_out);
    if (*randgen_cmd) {
      if ((randgen_bytes == 0) == (randgen_bits == 0)) {
        std::cerr << "randgen: give exactly one of --bytes or --bits\n";
        return kConfigError;
      }
      if (randgen_bits != 0) {
        if (randgen_bits % 8 != 0) {
          std::cerr << "randgen: --bits must be a multiple of 8\n";
          return kConfigError;
        }
        randgen_bytes = randgen_bits / 8;
      }
      return run_randgen(randgen_key, randgen_bytes, randgen_out);
    }
    if (*orbit_cmd) return run_orbit(orbit_x0, orbit_y0, orbit_params, orbit_count, orbit_out);
    if (*diffusion_cmd) {
      return run_analyze_diffusion(diffusion_key, diffusion_type, diffusion_bits,
                                   diffusion_trials, diffusion_seed, diffusion_out,
                                   diffusion_csv);
    }
    if (*collision_cmd) {
      return run_analyze_collision(collision_key, collision_type, collision_bits,
                                   collision_trials, collision_seed, collision_short,
                                   collision_out, collision_csv);
    }
    if (*ent_cmd) return run_analyze_ent(ent_input, ent_out, ent_csv);
    std::cerr << "no subcommand\n";
    return kConfigError;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const shah::KeyError& e) {
    std::cerr << "invalid key: " << e.what() << "\n";
    return kConfigError;
  } catch (const shah::DivergenceError& e) {
    std::cerr << "generator error: " << e.what() << "\n";
    return kGeneratorError;
  } catch (const shah::StarvationError& e) {
    std::cerr << "generator error: " << e.what() << "\n";
    return kGeneratorError;
  } catch (const IoFailure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
