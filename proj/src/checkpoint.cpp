#include "corekg/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "corekg/util.hpp"

namespace corekg {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'C', 'O', 'R', 'E', 'K', 'G', 'C', '1'};
constexpr std::uint32_t kVersion = 1;

void write_bytes(std::ofstream& out, const void* p, std::size_t n) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

template <class T>
void write_pod(std::ofstream& out, T v) {
  write_bytes(out, &v, sizeof v);
}

void read_bytes(std::ifstream& in, void* p, std::size_t n) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (!in) throw std::runtime_error("corrupt checkpoint: unexpected end of file");
}

template <class T>
T read_pod(std::ifstream& in) {
  T v;
  read_bytes(in, &v, sizeof v);
  return v;
}

void write_table(std::ofstream& out, const EmbeddingTable& t) {
  write_pod<std::uint8_t>(out, static_cast<std::uint8_t>(t.param()));
  std::uint8_t pad[3] = {0, 0, 0};
  write_bytes(out, pad, 3);
  write_pod<std::int64_t>(out, t.rows());
  write_pod<std::int64_t>(out, t.dim());
  write_bytes(out, t.data().data(), t.data().size() * sizeof(double));
}

void read_table(std::ifstream& in, EmbeddingTable& t) {
  auto param = read_pod<std::uint8_t>(in);
  std::uint8_t pad[3];
  read_bytes(in, pad, 3);
  auto rows = read_pod<std::int64_t>(in);
  auto dim = read_pod<std::int64_t>(in);
  if (param != static_cast<std::uint8_t>(t.param()) || rows != t.rows() || dim != t.dim())
    throw std::runtime_error("corrupt checkpoint: table header mismatch");
  read_bytes(in, t.data().data(), t.data().size() * sizeof(double));
}

nlohmann::json config_to_json(const TrainConfig& c) {
  nlohmann::json j;
  j["model"] = model_kind_name(c.model_kind);
  j["k"] = c.k;
  j["l"] = c.l;
  j["Ebz"] = c.entity_batch;
  j["Tbz"] = c.type_batch;
  j["Nsz"] = c.neg_size;
  j["alpha1"] = c.alpha1;
  j["alpha2"] = c.alpha2;
  j["alpha3"] = c.alpha3;
  j["gamma1"] = c.gamma1;
  j["gamma2"] = c.gamma2;
  j["gamma3"] = c.gamma3;
  j["eta1"] = c.lr;
  j["lr_decay"] = c.lr_decay;
  j["total_steps"] = c.total_steps;
  j["alternation_period"] = c.alternation_period;
  j["warmup_steps"] = c.warmup_steps;
  j["seed"] = c.seed;
  j["checkpoint_interval"] = c.checkpoint_interval;
  return j;
}

}  // namespace

void save_checkpoint(const std::string& path, const CoreModel& model, const CheckpointMeta& meta,
                     const TrainConfig* cfg, const std::string& manifest_ref) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_bytes(out, kMagic, sizeof kMagic);
  write_pod<std::uint32_t>(out, kVersion);
  write_pod<std::uint8_t>(out, static_cast<std::uint8_t>(model.kind));
  std::uint8_t pad[3] = {0, 0, 0};
  write_bytes(out, pad, 3);
  write_pod<std::int64_t>(out, model.k);
  write_pod<std::int64_t>(out, model.l);
  write_pod<std::int64_t>(out, model.entity.rows());
  write_pod<std::int64_t>(out, model.kg_relation.rows());
  write_pod<std::int64_t>(out, model.type.rows());
  write_pod<std::int64_t>(out, meta.step);
  write_pod<std::uint64_t>(out, meta.entity_hash);
  write_pod<std::uint64_t>(out, meta.relation_hash);
  write_pod<std::uint64_t>(out, meta.type_hash);
  write_table(out, model.entity);
  write_table(out, model.kg_relation);
  write_table(out, model.type);
  write_table(out, model.type_relation);
  write_pod<std::int64_t>(out, model.map.k);
  write_pod<std::int64_t>(out, model.map.l);
  for (const auto* m : {&model.map.a_rr, &model.map.a_ir, &model.map.a_ri, &model.map.a_ii})
    write_bytes(out, m->data(), m->size() * sizeof(double));
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);

  nlohmann::json side;
  side["config"] = cfg ? config_to_json(*cfg) : nlohmann::json(nullptr);
  side["model"] = model_kind_name(model.kind);
  side["k"] = model.k;
  side["l"] = model.l;
  side["n_entities"] = model.entity.rows();
  side["n_relations"] = model.kg_relation.rows();
  side["n_types"] = model.type.rows();
  side["step"] = meta.step;
  side["manifest"] = manifest_ref.empty() ? nlohmann::json(nullptr) : nlohmann::json(manifest_ref);
  side["vocab_hash"] = {{"entities", hex_u64(meta.entity_hash)},
                        {"relations", hex_u64(meta.relation_hash)},
                        {"types", hex_u64(meta.type_hash)}};
  std::ofstream js(path + ".json");
  if (!js) throw std::runtime_error("cannot open for writing: " + path + ".json");
  js << side.dump(2) << "\n";
  if (!js) throw std::runtime_error("write failed: " + path + ".json");
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[8];
  read_bytes(in, magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("not a checkpoint file: " + path);
  auto version = read_pod<std::uint32_t>(in);
  if (version != kVersion)
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  auto kind_byte = read_pod<std::uint8_t>(in);
  if (kind_byte > 1) throw std::runtime_error("corrupt checkpoint: bad model kind");
  std::uint8_t pad[3];
  read_bytes(in, pad, 3);
  auto kind = static_cast<ModelKind>(kind_byte);
  auto k = read_pod<std::int64_t>(in);
  auto l = read_pod<std::int64_t>(in);
  auto n_entities = read_pod<std::int64_t>(in);
  auto n_relations = read_pod<std::int64_t>(in);
  auto n_types = read_pod<std::int64_t>(in);
  if (k <= 0 || l <= 0 || n_entities <= 0 || n_relations <= 0 || n_types <= 0)
    throw std::runtime_error("corrupt checkpoint: bad dimensions");

  CheckpointMeta meta;
  meta.step = read_pod<std::int64_t>(in);
  meta.entity_hash = read_pod<std::uint64_t>(in);
  meta.relation_hash = read_pod<std::uint64_t>(in);
  meta.type_hash = read_pod<std::uint64_t>(in);

  CoreModel model(kind, k, l, n_entities, n_relations, n_types);
  read_table(in, model.entity);
  read_table(in, model.kg_relation);
  read_table(in, model.type);
  read_table(in, model.type_relation);
  auto mk = read_pod<std::int64_t>(in);
  auto ml = read_pod<std::int64_t>(in);
  if (mk != k || ml != l) throw std::runtime_error("corrupt checkpoint: regression dims mismatch");
  for (auto* m : {&model.map.a_rr, &model.map.a_ir, &model.map.a_ri, &model.map.a_ii})
    read_bytes(in, m->data(), m->size() * sizeof(double));

  return {std::move(model), meta};
}

}  // namespace corekg
