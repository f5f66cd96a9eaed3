#include "hyperarr/cache.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "hyperarr/error.hpp"

namespace hyperarr {

namespace {

constexpr const char* kMagic = "hyperarr-lattice 1";

std::string entry_text(const CyclotomicNumber& c) {
  std::string out;
  for (const auto& s : c.coeff_strings()) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

CyclotomicNumber entry_from(const std::string& text, unsigned order) {
  std::vector<Rational> coeffs;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string piece = text.substr(start, comma - start);
    try {
      Rational q(piece);
      q.canonicalize();
      coeffs.push_back(q);
    } catch (const std::invalid_argument&) {
      throw ParseError("lattice cache: bad coefficient '" + piece + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return CyclotomicNumber::from_polynomial(order, coeffs);
}

std::string expect_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(std::string("lattice cache: missing ") + what);
  return line;
}

}  // namespace

std::string serialize_lattice(const Arrangement& a, const IntersectionLattice& lat) {
  std::ostringstream out;
  const std::string text = a.canonical_text();
  out << kMagic << '\n' << "arrangement " << a.size() + 1 << '\n' << text;
  out << "levels";
  for (std::size_t s : lat.level_sizes()) out << ' ' << s;
  out << '\n';
  for (const auto& f : lat.flats()) {
    out << "flat " << (f.support.size() == 0 ? "-" : f.support.to_hex()) << ' ' << f.rank;
    for (auto b : f.basis) out << ' ' << b;
    out << '\n';
    for (const auto& row : f.subspace.forms()) {
      out << "row";
      for (const auto& c : row) out << ' ' << entry_text(c);
      out << '\n';
    }
  }
  const std::size_t n = lat.hyperplane_count();
  for (FlatId id = 0; id < lat.size(); ++id) {
    out << "up";
    for (std::size_t h = 0; h < n; ++h) out << ' ' << lat.cover(id, h);
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

class LatticeReader {
 public:
  static IntersectionLattice read(const Arrangement& a, const std::string& text) {
    std::istringstream in(text);
    if (expect_line(in, "header") != kMagic) throw ParseError("lattice cache: bad header");

    std::istringstream head(expect_line(in, "arrangement"));
    std::string word;
    std::size_t lines = 0;
    if (!(head >> word >> lines) || word != "arrangement")
      throw ParseError("lattice cache: bad arrangement header");
    std::string stored;
    for (std::size_t k = 0; k < lines; ++k) stored += expect_line(in, "arrangement text") + '\n';
    if (stored != a.canonical_text())
      throw DomainError("lattice cache: entry belongs to a different arrangement");

    IntersectionLattice lat;
    lat.ambient_ = a.ambient();
    lat.order_ = a.field_order();
    lat.hyperplanes_ = a.size();

    std::istringstream lv(expect_line(in, "levels"));
    if (!(lv >> word) || word != "levels") throw ParseError("lattice cache: bad levels line");
    lat.level_begin_ = {0};
    for (std::size_t s; lv >> s;) lat.level_begin_.push_back(lat.level_begin_.back() + s);
    if (lat.level_begin_.size() < 2) throw ParseError("lattice cache: no levels");
    const std::size_t total = lat.level_begin_.back();

    lat.flats_.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
      std::istringstream fl(expect_line(in, "flat"));
      std::string hex;
      Flat f;
      if (!(fl >> word >> hex >> f.rank) || word != "flat")
        throw ParseError("lattice cache: bad flat line");
      f.support = hex == "-" ? Bitset(a.size()) : Bitset::from_hex(a.size(), hex);
      if (f.support.size() != a.size()) throw ParseError("lattice cache: bad support");
      for (std::uint32_t b; fl >> b;) f.basis.push_back(b);
      Matrix rows;
      for (std::size_t r = 0; r < f.rank; ++r) {
        std::istringstream rl(expect_line(in, "row"));
        if (!(rl >> word) || word != "row") throw ParseError("lattice cache: bad row");
        Vector row;
        for (std::string e; rl >> e;) row.push_back(entry_from(e, a.field_order()));
        if (row.size() != a.ambient()) throw ParseError("lattice cache: bad row length");
        rows.push_back(std::move(row));
      }
      f.subspace = Subspace::from_rows(a.ambient(), a.field_order(), std::move(rows));
      if (f.subspace.codim() != f.rank || f.basis.size() != f.rank)
        throw ParseError("lattice cache: rank mismatch");
      lat.flats_.push_back(std::move(f));
    }

    lat.up_.reserve(total * a.size());
    for (std::size_t i = 0; i < total; ++i) {
      std::istringstream ul(expect_line(in, "up"));
      if (!(ul >> word) || word != "up") throw ParseError("lattice cache: bad cover line");
      std::size_t count = 0;
      for (FlatId id; ul >> id; ++count) {
        if (id >= total) throw ParseError("lattice cache: cover out of range");
        lat.up_.push_back(id);
      }
      if (count != a.size()) throw ParseError("lattice cache: bad cover count");
    }
    if (expect_line(in, "end") != "end") throw ParseError("lattice cache: missing end");
    lat.reindex();
    if (lat.index_.size() != total) throw ParseError("lattice cache: duplicate supports");
    return lat;
  }
};

IntersectionLattice deserialize_lattice(const Arrangement& a, const std::string& text) {
  return LatticeReader::read(a, text);
}

std::optional<LatticeCache> LatticeCache::from_flag_or_env(const std::string& flag) {
  if (!flag.empty()) return LatticeCache(flag);
  if (const char* env = std::getenv(kCacheEnv); env != nullptr && *env != '\0')
    return LatticeCache(env);
  return std::nullopt;
}

std::filesystem::path LatticeCache::path_for(const Arrangement& a) const {
  return dir_ / (a.content_hash() + ".lattice");
}

std::optional<IntersectionLattice> LatticeCache::load(const Arrangement& a) const {
  std::ifstream in(path_for(a), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return deserialize_lattice(a, buf.str());
  } catch (const Error&) {
    return std::nullopt;
  }
}

void LatticeCache::store(const Arrangement& a, const IntersectionLattice& lat) const {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw DomainError("cannot create cache directory " + dir_.string() + ": " + ec.message());
  const auto final_path = path_for(a);
  std::ostringstream suffix;
  suffix << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
         << counter++;
  const auto tmp = std::filesystem::path(final_path.string() + suffix.str());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write cache file " + tmp.string());
    out << serialize_lattice(a, lat);
    if (!out.flush()) throw DomainError("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DomainError("cannot install cache file " + final_path.string());
  }
}

IntersectionLattice cached_lattice(const Arrangement& a, const LatticeOptions& opts,
                                   const std::optional<LatticeCache>& cache, bool* hit) {
  if (hit != nullptr) *hit = false;
  if (cache) {
    if (auto lat = cache->load(a)) {
      if (lat->size() > opts.max_flats)
        throw LimitError("lattice exceeds --max-flats=" + std::to_string(opts.max_flats));
      if (hit != nullptr) *hit = true;
      return std::move(*lat);
    }
  }
  IntersectionLattice lat = build_lattice(a, opts);
  if (cache) cache->store(a, lat);
  return lat;
}

}  // namespace hyperarr
