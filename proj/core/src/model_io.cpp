#include "jamoparse/model_io.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "jamoparse/errors.hpp"

namespace jamoparse {
namespace {

static_assert(std::endian::native == std::endian::little, "model I/O assumes a little-endian host");

constexpr char kMagic[8] = {'J', 'A', 'M', 'O', 'P', 'R', 'S', 'R'};
constexpr std::size_t kHeaderSize = sizeof(kMagic) + sizeof(std::uint32_t);
constexpr std::size_t kTrailerSize = sizeof(std::uint32_t);

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in pieces.
  std::size_t offset = 0;
  while (offset < bytes.size()) {
    const std::size_t n = std::min<std::size_t>(bytes.size() - offset, std::numeric_limits<uInt>::max());
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + offset), static_cast<uInt>(n));
    offset += n;
  }
  return static_cast<std::uint32_t>(crc);
}

class Writer {
 public:
  template <typename T>
  void pod(T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void u32(std::uint32_t v) { pod(v); }
  void u64(std::uint64_t v) { pod(v); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_ += s;
  }
  void raw(const char* p, std::size_t n) { out_.append(p, n); }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  template <typename T>
  T pod() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::uint32_t u32() { return pod<std::uint32_t>(); }
  std::uint64_t u64() { return pod<std::uint64_t>(); }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw CorruptFileError("model payload ends early");
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

void write_vocabulary(Writer& w, const Vocabulary& v) {
  w.u32(static_cast<std::uint32_t>(v.kind()));
  w.u64(v.size());
  for (const auto& e : v.entries()) {
    w.str(e.unit);
    w.u64(e.count);
  }
}

Vocabulary read_vocabulary(Reader& r, UnitKind expected) {
  const auto kind = static_cast<UnitKind>(r.u32());
  if (kind != expected) throw CorruptFileError("vocabulary sections out of order");
  const std::uint64_t n = r.u64();
  std::vector<Vocabulary::Entry> entries;
  for (std::uint64_t i = 0; i < n; ++i) {
    Vocabulary::Entry e;
    e.unit = r.str();
    e.count = r.u64();
    entries.push_back(std::move(e));
  }
  return Vocabulary::restore(kind, std::move(entries));
}

}  // namespace

std::string serialize_model(const TrainedModel& model) {
  Writer w;
  w.raw(kMagic, sizeof(kMagic));
  w.u32(kModelFormatVersion);

  const UnitConfig& u = model.config.units;
  w.u64(u.jamo_dim);
  w.u64(u.char_dim);
  w.u64(u.word_dim);
  w.u64(u.encoder_dim);
  w.u64(u.encoder_layers);
  w.u64(model.config.scorer_hidden);
  w.u64(model.params.seed());

  write_vocabulary(w, model.vocab.jamo);
  write_vocabulary(w, model.vocab.chars);
  write_vocabulary(w, model.vocab.words);
  write_vocabulary(w, model.labels);

  w.u64(model.params.size());
  for (const Parameter& p : model.params) {
    w.str(p.name);
    w.u32(static_cast<std::uint32_t>(p.init));
    w.u32(p.sparse ? 1 : 0);
    w.u64(p.value.rows());
    w.u64(p.value.cols());
    for (real v : p.value.values()) w.pod(static_cast<double>(v));
  }
  w.u32(crc32_of(w.bytes()));
  return std::move(w.bytes());
}

TrainedModel deserialize_model(std::string_view bytes) {
  if (bytes.size() < kHeaderSize + kTrailerSize || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw CorruptFileError("not a jamoparse model file");
  }
  std::uint32_t version = 0;
  std::memcpy(&version, bytes.data() + sizeof(kMagic), sizeof(version));
  if (version != kModelFormatVersion) {
    throw VersionMismatchError("model format version " + std::to_string(version) + ", this build reads " +
                               std::to_string(kModelFormatVersion));
  }
  const std::string_view body = bytes.substr(0, bytes.size() - kTrailerSize);
  std::uint32_t stored_crc = 0;
  std::memcpy(&stored_crc, bytes.data() + body.size(), sizeof(stored_crc));
  if (crc32_of(body) != stored_crc) throw CorruptFileError("model checksum mismatch");

  Reader r(body.substr(kHeaderSize));
  TrainedModel model;
  UnitConfig& u = model.config.units;
  u.jamo_dim = r.u64();
  u.char_dim = r.u64();
  u.word_dim = r.u64();
  u.encoder_dim = r.u64();
  u.encoder_layers = r.u64();
  model.config.scorer_hidden = r.u64();
  model.params.set_seed(r.u64());

  model.vocab.jamo = read_vocabulary(r, UnitKind::jamo);
  model.vocab.chars = read_vocabulary(r, UnitKind::character);
  model.vocab.words = read_vocabulary(r, UnitKind::word);
  model.labels = read_vocabulary(r, UnitKind::label);

  const std::uint64_t count = r.u64();
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::string name = r.str();
    const auto init = static_cast<InitKind>(r.u32());
    const bool sparse = r.u32() != 0;
    const std::uint64_t rows = r.u64();
    const std::uint64_t cols = r.u64();
    if (cols != 0 && rows > std::numeric_limits<std::uint64_t>::max() / cols) {
      throw CorruptFileError("parameter " + name + " has an impossible shape");
    }
    ParamId id;
    try {
      id = model.params.add(name, Shape{rows, cols}, init, sparse);
    } catch (const std::invalid_argument&) {
      throw CorruptFileError("parameter " + name + " appears twice");
    }
    for (real& v : model.params[id].value.values()) v = static_cast<real>(r.pod<double>());
  }
  if (!r.done()) throw CorruptFileError("trailing bytes after parameters");

  const std::size_t stored = model.params.size();
  try {
    model.bind();
  } catch (const CorruptFileError&) {
    throw;
  } catch (const std::exception& e) {
    throw CorruptFileError(std::string("model does not match its configuration: ") + e.what());
  }
  if (model.params.size() != stored) throw CorruptFileError("model file is missing parameters");
  return model;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  const std::string bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path.string());
  return deserialize_model(bytes);
}

}  // namespace jamoparse
