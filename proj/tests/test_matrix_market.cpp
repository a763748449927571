#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "waxsolve/matrix_market.hpp"

using namespace waxsolve;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("waxsolve_mm_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

fs::path write_file(const TempDir& dir, const std::string& name, const std::string& text) {
    const fs::path p = dir.path / name;
    std::ofstream out(p);
    out << text;
    return p;
}

} // namespace

TEST_CASE("read_matrix: one-by-one") {
    TempDir dir;
    const fs::path p = write_file(dir, "a.mtx",
                                  "%%MatrixMarket matrix array complex general\n"
                                  "1 1\n"
                                  "2.0 0.0\n");
    const Matrix a = read_matrix(p);
    REQUIRE(a.size() == 1);
    CHECK(a(0, 0) == Complex(2.0, 0.0));
}

TEST_CASE("read_matrix: identity with comments") {
    TempDir dir;
    const fs::path p = write_file(dir, "i.mtx",
                                  "%%MatrixMarket matrix array complex general\n"
                                  "% a comment\n"
                                  "2 2\n"
                                  "1.0 0.0\n0.0 0.0\n0.0 0.0\n1.0 0.0\n");
    const Matrix a = read_matrix(p);
    CHECK(a(0, 0) == Complex(1.0, 0.0));
    CHECK(a(0, 1) == Complex(0.0, 0.0));
    CHECK(a(1, 1) == Complex(1.0, 0.0));
}

TEST_CASE("read_matrix: column-major value order") {
    TempDir dir;
    const fs::path p = write_file(dir, "cm.mtx",
                                  "%%MatrixMarket matrix array complex general\n"
                                  "2 2\n"
                                  "1.0 0.0\n2.0 0.0\n3.0 0.0\n4.0 0.0\n");
    const Matrix a = read_matrix(p);
    CHECK(a(0, 0) == Complex(1.0, 0.0));
    CHECK(a(1, 0) == Complex(2.0, 0.0)); // second value is row 2 of column 1
    CHECK(a(0, 1) == Complex(3.0, 0.0));
    CHECK(a(1, 1) == Complex(4.0, 0.0));
}

TEST_CASE("read_matrix: dense real header fills zero imaginary parts") {
    TempDir dir;
    const fs::path p = write_file(dir, "r.mtx",
                                  "%%MatrixMarket matrix array real general\n"
                                  "2 2\n"
                                  "1.5\n0.0\n0.0\n-2.5\n");
    const Matrix a = read_matrix(p);
    CHECK(a(0, 0) == Complex(1.5, 0.0));
    CHECK(a(1, 1) == Complex(-2.5, 0.0));
}

TEST_CASE("read_matrix: rejects sparse and malformed input") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(
        read_matrix(write_file(dir, "coo.mtx",
                               "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 2.0 0.0\n")),
        doctest::Contains("array format required"), ParseError);

    CHECK_THROWS_AS(
        read_matrix(write_file(dir, "rect.mtx",
                               "%%MatrixMarket matrix array complex general\n2 3\n")),
        DimensionError);

    CHECK_THROWS_AS(read_matrix(write_file(dir, "short.mtx",
                                           "%%MatrixMarket matrix array complex general\n"
                                           "2 2\n1.0 0.0\n")),
                    ParseError);

    CHECK_THROWS_AS(read_matrix(write_file(dir, "nan.mtx",
                                           "%%MatrixMarket matrix array complex general\n"
                                           "1 1\nnan 0.0\n")),
                    ParseError);

    CHECK_THROWS_AS(read_matrix(write_file(dir, "sym.mtx",
                                           "%%MatrixMarket matrix array complex symmetric\n"
                                           "1 1\n1.0 0.0\n")),
                    ParseError);

    CHECK_THROWS_AS(read_matrix(dir.path / "missing.mtx"), IoError);
}

TEST_CASE("write_matrix: golden one-by-one zero") {
    TempDir dir;
    const fs::path p = dir.path / "z.mtx";
    write_matrix(p, Matrix(1));
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "%%MatrixMarket matrix array complex general\n1 1\n0.0 0.0\n");
}

TEST_CASE("write_matrix: round-trip is bit exact") {
    TempDir dir;
    std::mt19937_64 eng(51);
    const Matrix a = testutil::random_matrix(5, eng);
    const fs::path p = dir.path / "rt.mtx";
    write_matrix(p, a);
    const Matrix back = read_matrix(p);
    REQUIRE(back.size() == a.size());
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(back(i, j) == a(i, j));

    // and the bytes themselves are reproducible
    const fs::path p2 = dir.path / "rt2.mtx";
    write_matrix(p2, back);
    std::ifstream f1(p), f2(p2);
    std::stringstream b1, b2;
    b1 << f1.rdbuf();
    b2 << f2.rdbuf();
    CHECK(b1.str() == b2.str());
}

TEST_CASE("write_matrix: unwritable path") {
    CHECK_THROWS_AS(write_matrix("/nonexistent_dir_zz/x.mtx", Matrix(1)), IoError);
}
