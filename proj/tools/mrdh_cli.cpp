// Command-line front end for the encrypted-mesh data hiding pipeline.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "mrdh/container.hpp"
#include "mrdh/error.hpp"
#include "mrdh/mesh_io.hpp"
#include "mrdh/metrics.hpp"
#include "mrdh/payload.hpp"

namespace fs = std::filesystem;
using namespace mrdh;

namespace {

struct RunConfig {
  int p = 5;
  std::string strategy = "topology";
  std::string km;
  std::string ka;
  std::string nonce;
  std::string out;
  std::string payload_out;
  std::string csv;
  bool normalize = false;
  unsigned threads = 0;
  std::uint64_t seed = 1;
};

Key require_key(const std::string& flag_value, const char* env, const char* name) {
  if (!flag_value.empty()) return Key::from_hex(flag_value);
  if (const char* v = std::getenv(env)) return Key::from_hex(v);
  throw Error(std::string("missing ") + name + " (pass --" + name + " or set " + env + ")");
}

Nonce pick_nonce(const RunConfig& cfg) { return cfg.nonce.empty() ? Nonce::random() : Nonce::from_hex(cfg.nonce); }

std::vector<std::uint8_t> to_bytes(const std::string& s) { return {s.begin(), s.end()}; }

StegoContainer load_container(const fs::path& path) {
  const auto bytes = to_bytes(read_file(path));
  if (!looks_like_container(bytes)) throw FormatError("'" + path.string() + "' is not an MRDH container");
  return read_container(bytes);
}

void save_container(const StegoContainer& c, const fs::path& path) {
  const auto bytes = write_container(c);
  write_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

void require_out(const RunConfig& cfg) {
  if (cfg.out.empty()) throw Error("--out is required");
}

void print_capacity(std::ostream& os, const StegoContainer& c) {
  const ContainerLayout layout = analyze(c);
  const auto n = static_cast<std::size_t>(c.vertex_count());
  os << "n=" << n << " m=" << c.face_count() << " strategy=" << to_string(c.strategy) << " p=" << c.p
     << " l=" << c.l << '\n'
     << "|S_e|=" << layout.partition.embed_set.size()
     << " utilization=" << format_number(layout.partition.utilization(n))
     << " weakly_predicted=" << weakly_predicted_count(layout.partition) << '\n'
     << "l_p=" << layout.capacity.l_p << " l_ai=" << layout.capacity.l_ai << " net=" << layout.capacity.net_bits
     << " ER=" << format_number(layout.capacity.er_bpv) << " bpv\n"
     << "max_payload_bytes=" << layout.capacity.max_payload_bytes() << " payload_bits=" << layout.aux.payload_bit_len
     << '\n';
}

OwnerOptions owner_options(const RunConfig& cfg) {
  return {cfg.p, strategy_from_string(cfg.strategy), cfg.normalize};
}

int cmd_prepare(const RunConfig& cfg, const std::string& mesh_path) {
  const Mesh mesh = load_mesh(mesh_path);
  // Capacity does not depend on the key; a throwaway key gives the same layout.
  const StegoContainer c = encrypt_model(mesh, owner_options(cfg), Key{}, Nonce{});
  print_capacity(std::cout, c);
  if (!cfg.out.empty()) {
    QuantizedMesh q = recover(c, Key{});
    save_mesh(to_mesh(q, c), cfg.out);
  }
  return 0;
}

int cmd_encrypt(const RunConfig& cfg, const std::string& mesh_path) {
  require_out(cfg);
  const Mesh mesh = load_mesh(mesh_path);
  const Key km = require_key(cfg.km, "MRDH_KM", "km");
  const StegoContainer c = encrypt_model(mesh, owner_options(cfg), km, pick_nonce(cfg));
  save_container(c, cfg.out);
  print_capacity(std::cout, c);
  return 0;
}

int cmd_embed(const RunConfig& cfg, const std::string& input, const std::string& payload_path) {
  require_out(cfg);
  const auto input_bytes = to_bytes(read_file(input));
  StegoContainer enc;
  if (looks_like_container(input_bytes)) {
    enc = read_container(input_bytes);
  } else {
    const Mesh mesh = parse_mesh(std::string_view(reinterpret_cast<const char*>(input_bytes.data()), input_bytes.size()),
                                 format_from_path(input));
    enc = encrypt_model(mesh, owner_options(cfg), require_key(cfg.km, "MRDH_KM", "km"), pick_nonce(cfg));
  }
  const Key ka = require_key(cfg.ka, "MRDH_KA", "ka");
  const auto data = to_bytes(read_file(payload_path));
  const StegoContainer stego = hide(enc, data, ka);
  save_container(stego, cfg.out);
  print_capacity(std::cout, stego);
  return 0;
}

int cmd_extract(const RunConfig& cfg, const std::string& container_path) {
  require_out(cfg);
  const StegoContainer c = load_container(container_path);
  const auto data = extract(c, require_key(cfg.ka, "MRDH_KA", "ka"));
  write_file(cfg.out, std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
  std::cout << "extracted " << data.size() << " bytes\n";
  return 0;
}

int cmd_recover(const RunConfig& cfg, const std::string& container_path) {
  require_out(cfg);
  const StegoContainer c = load_container(container_path);
  save_mesh(recover_mesh(c, require_key(cfg.km, "MRDH_KM", "km")), cfg.out);
  std::cout << "recovered " << c.vertex_count() << " vertices\n";
  return 0;
}

int cmd_both(const RunConfig& cfg, const std::string& container_path) {
  require_out(cfg);
  if (cfg.payload_out.empty()) throw Error("--payload-out is required");
  const StegoContainer c = load_container(container_path);
  const auto [data, q] =
      extract_and_recover(c, require_key(cfg.ka, "MRDH_KA", "ka"), require_key(cfg.km, "MRDH_KM", "km"));
  write_file(cfg.payload_out, std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
  save_mesh(to_mesh(q, c), cfg.out);
  std::cout << "extracted " << data.size() << " bytes, recovered " << c.vertex_count() << " vertices\n";
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, const std::string& mesh_path, const std::string& container_path) {
  const Mesh original = load_mesh(mesh_path);
  const StegoContainer c = load_container(container_path);
  const Mesh recovered = recover_mesh(c, require_key(cfg.km, "MRDH_KM", "km"));
  const EvalReport r = evaluate(original, c, recovered);
  std::cout << "snr=" << format_number(r.snr) << " dB hausdorff=" << format_number(r.hausdorff) << '\n'
            << "n=" << r.n << " m=" << r.m << " |S_e|=" << r.s_e << " utilization=" << format_number(r.utilization)
            << '\n'
            << "l_p=" << r.l_p << " l_ai=" << r.l_ai << " ER=" << format_number(r.er_bpv)
            << " bpv payload_bits=" << r.payload_bits << '\n';
  if (!cfg.csv.empty()) {
    std::ostringstream os;
    os << csv_header() << '\n' << csv_row(fs::path(mesh_path).filename().string(), c.strategy, c.p, r) << '\n';
    write_file(cfg.csv, os.str());
  }
  return 0;
}

struct BenchResult {
  std::optional<EvalReport> report[2];
};

EvalReport bench_one(const Mesh& mesh, const RunConfig& cfg, Strategy strategy, const Key& km, const Key& ka,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Nonce nonce;
  for (auto& b : nonce.bytes) b = static_cast<std::uint8_t>(rng());
  const StegoContainer enc = encrypt_model(mesh, {cfg.p, strategy, cfg.normalize}, km, nonce);
  std::vector<std::uint8_t> data(analyze(enc).capacity.max_payload_bytes());
  for (auto& b : data) b = static_cast<std::uint8_t>(rng());
  const StegoContainer stego = hide(enc, data, ka);
  const auto [got, q] = extract_and_recover(stego, ka, km);
  if (got != data) throw Error("extracted payload differs from embedded payload");
  const Mesh recovered = to_mesh(q, stego);
  return evaluate(mesh, stego, recovered);
}

int cmd_bench(const RunConfig& cfg, const std::string& corpus_dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (!entry.is_regular_file()) continue;
    try {
      format_from_path(entry.path());
      files.push_back(entry.path());
    } catch (const Error&) {
    }
  }
  std::sort(files.begin(), files.end());

  std::mt19937_64 key_rng(cfg.seed);
  Key km, ka;
  for (auto& b : km.bytes) b = static_cast<std::uint8_t>(key_rng());
  for (auto& b : ka.bytes) b = static_cast<std::uint8_t>(key_rng());
  if (!cfg.km.empty()) km = Key::from_hex(cfg.km);
  if (!cfg.ka.empty()) ka = Key::from_hex(cfg.ka);

  const Strategy strategies[2] = {Strategy::kTopology, Strategy::kParityOnly};
  std::vector<BenchResult> results(files.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        const Mesh mesh = load_mesh(files[i]);
        for (int s = 0; s < 2; ++s) results[i].report[s] = bench_one(mesh, cfg, strategies[s], km, ka, cfg.seed + i);
      } catch (const std::exception& e) {
        std::lock_guard lock(log_mutex);
        std::cerr << "bench: skipping " << files[i].filename().string() << ": " << e.what() << '\n';
      }
    }
  };
  const unsigned threads = std::max(1U, cfg.threads ? cfg.threads : std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, std::max<std::size_t>(files.size(), 1)); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream os;
  os << csv_header() << '\n';
  double er_sum[2] = {0, 0}, util_sum[2] = {0, 0};
  std::size_t count[2] = {0, 0}, weak[2] = {0, 0};
  for (std::size_t i = 0; i < files.size(); ++i) {
    for (int s = 0; s < 2; ++s) {
      const auto& r = results[i].report[s];
      if (!r) continue;
      os << csv_row(files[i].filename().string(), strategies[s], cfg.p, *r) << '\n';
      er_sum[s] += r->er_bpv;
      util_sum[s] += r->utilization;
      weak[s] += r->weakly_predicted;
      ++count[s];
    }
  }
  for (int s = 0; s < 2; ++s) {
    if (!count[s]) continue;
    const double c = static_cast<double>(count[s]);
    os << "MEAN,,," << to_string(strategies[s]) << ',' << cfg.p << ",," << format_number(util_sum[s] / c) << ",,,"
       << format_number(er_sum[s] / c) << ",,\n";
  }
  if (cfg.csv.empty()) {
    std::cout << os.str();
  } else {
    write_file(cfg.csv, os.str());
    std::cout << "wrote " << count[0] + count[1] << " rows to " << cfg.csv << '\n';
  }
  if (count[0] + count[1] < 2 * files.size())
    std::cerr << "bench: " << 2 * files.size() - count[0] - count[1] << " runs failed\n";
  std::cerr << "bench: embed vertices with fewer than two predictors: topology=" << weak[0]
            << " parity_only=" << weak[1] << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible data hiding in encrypted triangular meshes"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_model_opts = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "Decimal precision (1-33)")->check(CLI::Range(kMinPrecision, kMaxPrecision));
    sub->add_option("--strategy", cfg.strategy, "Vertex division: topology or parity_only")
        ->check(CLI::IsMember({"topology", "parity_only"}));
    sub->add_flag("--normalize", cfg.normalize, "Scale into (-1, 1) by a power of two before quantizing");
  };

  std::string in1, in2;

  auto* prepare = app.add_subcommand("prepare", "Report the room reserved for embedding");
  prepare->add_option("mesh", in1, "Input .off/.obj")->required();
  prepare->add_option("--out", cfg.out, "Write the quantized mesh recovery will reproduce");
  add_model_opts(prepare);

  auto* encrypt = app.add_subcommand("encrypt", "Quantize, label and encrypt a mesh into a container");
  encrypt->add_option("mesh", in1, "Input .off/.obj")->required();
  encrypt->add_option("--km", cfg.km, "Model key, 64 hex chars (or MRDH_KM)");
  encrypt->add_option("--nonce", cfg.nonce, "Nonce, 24 hex chars (random if omitted)");
  encrypt->add_option("--out", cfg.out, "Output container");
  add_model_opts(encrypt);

  auto* embed_cmd = app.add_subcommand("embed", "Embed a payload into an encrypted container (or a mesh with --km)");
  embed_cmd->add_option("input", in1, "Encrypted container, or .off/.obj mesh")->required();
  embed_cmd->add_option("payload", in2, "Payload file")->required();
  embed_cmd->add_option("--ka", cfg.ka, "Data key, 64 hex chars (or MRDH_KA)");
  embed_cmd->add_option("--km", cfg.km, "Model key when the input is a mesh (or MRDH_KM)");
  embed_cmd->add_option("--nonce", cfg.nonce, "Nonce when the input is a mesh");
  embed_cmd->add_option("--out", cfg.out, "Output container");
  add_model_opts(embed_cmd);

  auto* extract_cmd = app.add_subcommand("extract", "Extract the payload (data key only)");
  extract_cmd->add_option("container", in1)->required();
  extract_cmd->add_option("--ka", cfg.ka, "Data key (or MRDH_KA)");
  extract_cmd->add_option("--out", cfg.out, "Payload output file");

  auto* recover_cmd = app.add_subcommand("recover", "Recover the mesh (model key only)");
  recover_cmd->add_option("container", in1)->required();
  recover_cmd->add_option("--km", cfg.km, "Model key (or MRDH_KM)");
  recover_cmd->add_option("--out", cfg.out, "Recovered .off/.obj");

  auto* both = app.add_subcommand("both", "Extract the payload, then recover the mesh");
  both->add_option("container", in1)->required();
  both->add_option("--ka", cfg.ka, "Data key (or MRDH_KA)");
  both->add_option("--km", cfg.km, "Model key (or MRDH_KM)");
  both->add_option("--out", cfg.out, "Recovered .off/.obj");
  both->add_option("--payload-out", cfg.payload_out, "Payload output file");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "SNR, Hausdorff distance and embedding rate");
  evaluate_cmd->add_option("original", in1, "Original .off/.obj")->required();
  evaluate_cmd->add_option("container", in2)->required();
  evaluate_cmd->add_option("--km", cfg.km, "Model key (or MRDH_KM)");
  evaluate_cmd->add_option("--csv", cfg.csv, "Write the report as a CSV row");

  auto* bench = app.add_subcommand("bench", "Run the full pipeline on every mesh of a directory");
  bench->add_option("corpus", in1, "Directory of .off/.obj files")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--csv", cfg.csv, "CSV output (stdout if omitted)");
  bench->add_option("--km", cfg.km, "Model key (seeded if omitted)");
  bench->add_option("--ka", cfg.ka, "Data key (seeded if omitted)");
  bench->add_option("--threads", cfg.threads, "Worker threads");
  bench->add_option("--seed", cfg.seed, "Seed for keys and payloads");
  add_model_opts(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (prepare->parsed()) return cmd_prepare(cfg, in1);
    if (encrypt->parsed()) return cmd_encrypt(cfg, in1);
    if (embed_cmd->parsed()) return cmd_embed(cfg, in1, in2);
    if (extract_cmd->parsed()) return cmd_extract(cfg, in1);
    if (recover_cmd->parsed()) return cmd_recover(cfg, in1);
    if (both->parsed()) return cmd_both(cfg, in1);
    if (evaluate_cmd->parsed()) return cmd_evaluate(cfg, in1, in2);
    if (bench->parsed()) return cmd_bench(cfg, in1);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
