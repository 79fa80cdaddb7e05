#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ghc/census.hpp"
#include "ghc/error.hpp"
#include "json.hpp"

static_assert(std::endian::native == std::endian::little, "store encoding assumes a little-endian host");

namespace ghc {

using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'G', 'H', 'C', '1'};

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

void put_f64(std::string& out, double v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.append(buf, 8);
}

void put_u32(std::string& out, std::uint32_t v) {
  char buf[4];
  std::memcpy(buf, &v, 4);
  out.append(buf, 4);
}

struct Reader {
  const std::string& s;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > s.size()) throw Error(ErrorCode::StoreFormat, "truncated store");
  }
  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      need(1);
      auto b = static_cast<unsigned char>(s[pos++]);
      v |= std::uint64_t(b & 0x7f) << shift;
      if (!(b & 0x80)) return v;
    }
    throw Error(ErrorCode::StoreFormat, "bad varint");
  }
  double f64() {
    need(8);
    double v;
    std::memcpy(&v, s.data() + pos, 8);
    pos += 8;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v;
    std::memcpy(&v, s.data() + pos, 4);
    pos += 4;
    return v;
  }
};

void put_record(std::string& out, const ConjClassRecord& r) {
  put_varint(out, r.necklace.size());
  for (Letter x : r.necklace) put_varint(out, x);
  put_f64(out, r.length);
  put_f64(out, r.holonomy);
  put_f64(out, r.trace.real());
  put_f64(out, r.trace.imag());
}

ConjClassRecord get_record(Reader& rd) {
  ConjClassRecord r;
  std::uint64_t n = rd.varint();
  if (n > 4096) throw Error(ErrorCode::StoreFormat, "implausible necklace length");
  r.necklace.resize(n);
  for (auto& x : r.necklace) x = static_cast<Letter>(rd.varint());
  r.length = rd.f64();
  r.holonomy = rd.f64();
  double re = rd.f64();
  double im = rd.f64();
  r.trace = {re, im};
  return r;
}

json header_json(const CensusStore& store) {
  const auto& h = store.header;
  return {{"format", "GHC1"},
          {"version", h.version},
          {"marking_hash", h.marking_hash},
          {"T", h.T},
          {"word_length_bound", h.word_length_bound},
          {"length_bounds", h.length_bounds},
          {"options", {{"max_word_len", h.max_word_len}}},
          {"config_hash", h.config_hash},
          {"record_count", store.records.size()}};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::StoreFormat, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& bytes) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::StoreFormat, "cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::StoreFormat, "write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::StoreFormat, "cannot rename " + tmp);
}

}  // namespace

std::string store_bytes(const CensusStore& store) {
  std::string out(kMagic, 4);
  std::string header = header_json(store).dump();
  put_u32(out, static_cast<std::uint32_t>(header.size()));
  out += header;
  for (const auto& r : store.records) put_record(out, r);
  return out;
}

CensusStore store_from_bytes(const std::string& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw Error(ErrorCode::StoreFormat, "missing GHC1 magic");
  Reader rd{bytes, 4};
  std::uint32_t hlen = rd.u32();
  rd.need(hlen);
  json h;
  try {
    h = json::parse(bytes.substr(rd.pos, hlen));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::StoreFormat, std::string("bad store header: ") + e.what());
  }
  rd.pos += hlen;
  CensusStore store;
  try {
    store.header.version = h.at("version").get<std::string>();
    store.header.marking_hash = h.at("marking_hash").get<std::string>();
    store.header.T = h.at("T").get<double>();
    store.header.word_length_bound = h.at("word_length_bound").get<int>();
    store.header.length_bounds = h.at("length_bounds").get<std::vector<double>>();
    store.header.max_word_len = h.at("options").at("max_word_len").get<int>();
    store.header.config_hash = h.value("config_hash", "");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::StoreFormat, std::string("incomplete store header: ") + e.what());
  }
  std::size_t count = h.at("record_count").get<std::size_t>();
  store.records.reserve(count);
  for (std::size_t i = 0; i < count; ++i) store.records.push_back(get_record(rd));
  if (rd.pos != bytes.size()) throw Error(ErrorCode::StoreFormat, "trailing bytes after records");
  return store;
}

void write_store(const std::string& path, const CensusStore& store) { spit(path, store_bytes(store)); }

CensusStore read_store(const std::string& path) { return store_from_bytes(slurp(path)); }

std::string records_bytes(const std::vector<ConjClassRecord>& records) {
  std::string out;
  put_varint(out, records.size());
  for (const auto& r : records) put_record(out, r);
  return out;
}

std::vector<ConjClassRecord> records_from_bytes(const std::string& bytes) {
  Reader rd{bytes};
  std::uint64_t n = rd.varint();
  std::vector<ConjClassRecord> out;
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(get_record(rd));
  if (rd.pos != bytes.size()) throw Error(ErrorCode::StoreFormat, "trailing bytes in shard");
  return out;
}

}  // namespace ghc
