#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "regpart/errors.hpp"
#include "regpart/table_cache.hpp"

using namespace regpart;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("regpart_cache_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CacheErrorKind load_error(const KIndex& k, std::size_t n, const fs::path& p) {
  try {
    load_table(k, n, p);
  } catch (const CacheError& e) {
    return e.kind();
  }
  FAIL("expected CacheError");
  return CacheErrorKind::Io;
}

}  // namespace

TEST_CASE("save then load is the identity") {
  TempDir dir;
  const auto k5 = KIndex::finite(5);
  const auto t = build_table_recurrence(k5, 100);
  const auto file = dir.path / cache_file_name(k5, 100);
  save_table(t, file);
  CHECK(load_table(k5, 100, file) == t);

  const auto inf = build_table_recurrence(KIndex::infinity(), 30);
  save_table(inf, dir.path / "inf.rpkt");
  CHECK(load_table(KIndex::infinity(), 30, dir.path / "inf.rpkt") == inf);
}

TEST_CASE("file layout") {
  TempDir dir;
  const auto t = build_table_recurrence(KIndex::finite(2), 4);
  save_table(t, dir.path / "t.rpkt");
  CHECK(read_text(dir.path / "t.rpkt") == "RPKT 1\nk=2 nmax=4\n1\n1\n1\n2\n2\n");
  CHECK(cache_file_name(KIndex::infinity(), 7).string() == "p_kinf_n7.rpkt");
}

TEST_CASE("load errors") {
  TempDir dir;
  const auto k5 = KIndex::finite(5);
  const auto file = dir.path / "t.rpkt";
  save_table(build_table_recurrence(k5, 20), file);

  SUBCASE("wrong k") { CHECK(load_error(KIndex::finite(6), 20, file) == CacheErrorKind::Mismatch); }
  SUBCASE("wrong n_max") { CHECK(load_error(k5, 21, file) == CacheErrorKind::Mismatch); }
  SUBCASE("truncated") {
    const std::string text = read_text(file);
    write_text(file, text.substr(0, text.size() - 8));
    CHECK(load_error(k5, 20, file) == CacheErrorKind::Corrupt);
  }
  SUBCASE("extra line") {
    write_text(file, read_text(file) + "7\n");
    CHECK(load_error(k5, 20, file) == CacheErrorKind::Corrupt);
  }
  SUBCASE("bad magic") {
    write_text(file, "RPKT 2\n" + read_text(file).substr(7));
    CHECK(load_error(k5, 20, file) == CacheErrorKind::Version);
  }
  SUBCASE("non-decimal entry") {
    std::string text = read_text(file);
    text.replace(text.rfind('\n', text.size() - 2) + 1, 1, "x");
    write_text(file, text);
    CHECK(load_error(k5, 20, file) == CacheErrorKind::Corrupt);
  }
  SUBCASE("garbled header") {
    write_text(file, "RPKT 1\nk5 n20\n1\n");
    CHECK(load_error(k5, 20, file) == CacheErrorKind::Corrupt);
  }
  SUBCASE("missing file") { CHECK(load_error(k5, 20, dir.path / "absent") == CacheErrorKind::Io); }
}

TEST_CASE("a warm store does not rebuild") {
  TempDir dir;
  const auto k3 = KIndex::finite(3);
  PartitionTable first = [&] {
    TableStore store(dir.path);
    auto t = store.get(k3, 200);
    store.get(k3, 200);
    CHECK(store.builds() == 1);
    return t;
  }();
  TableStore warm(dir.path);
  CHECK(warm.get(k3, 200) == first);
  CHECK(warm.builds() == 0);
  warm.get(k3, 201);
  CHECK(warm.builds() == 1);
}

TEST_CASE("a corrupt cache entry surfaces as CacheError") {
  TempDir dir;
  write_text(dir.path / cache_file_name(KIndex::finite(4), 10), "garbage\n");
  TableStore store(dir.path);
  CHECK_THROWS_AS(store.get(KIndex::finite(4), 10), CacheError);
}
