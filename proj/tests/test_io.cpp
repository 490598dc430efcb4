#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "shgordon/io.hpp"

using namespace shgordon::io;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("shgordon-io-test-" + std::to_string(std::rand()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("format_double round-trips exactly and is stable") {
    for (double v : {0.0, 1.0, -1.0, 0.1, 2.0 / 3.0, 1e-300, 6.29e-10,
                     0.98014613696109554843, 12345.678901234567}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
        CHECK(format_double(v) == s);  // deterministic
    }
    // Shortest form: no trailing digit noise on representable decimals.
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(-0.25) == "-0.25");
}

TEST_CASE("CsvTable enforces rectangular shape") {
    CsvTable t({"eps", "err"});
    t.row({"0.08", "1"});
    CHECK(t.rows() == 1);
    CHECK_THROWS_AS(t.row({"0.04"}), std::invalid_argument);
    CHECK_THROWS_AS(t.row({"0.04", "1", "extra"}), std::invalid_argument);
}

TEST_CASE("CsvTable emits header plus rows") {
    CsvTable t({"a", "b", "c"});
    t.row({"1", "2", "3"});
    t.row({"x", "y", "z"});
    CHECK(t.str() == "a,b,c\n1,2,3\nx,y,z\n");
    CHECK(t.rows() == 2);
}

TEST_CASE("write_file_atomic replaces content without temp residue") {
    TempDir tmp;
    const fs::path target = tmp.dir / "out.csv";
    write_file_atomic(target, "first\n");
    CHECK(slurp(target) == "first\n");
    write_file_atomic(target, "second\n");
    CHECK(slurp(target) == "second\n");
    // Nothing but the final file remains in the directory.
    std::size_t entries = 0;
    for (const auto& e : fs::directory_iterator(tmp.dir)) {
        (void)e;
        ++entries;
    }
    CHECK(entries == 1);
}

TEST_CASE("parse_config reads flat keys") {
    const RunConfig c = parse_config(
        R"({"N": 3, "R": 2.0, "gamma": 0.5, "a0": 1.5, "eps": 0.01, "mesh_n": 1600, "grading": "uniform"})");
    CHECK(c.dim == 3.0);
    CHECK(c.radius == 2.0);
    CHECK(c.gamma == 0.5);
    CHECK(c.a0 == 1.5);
    CHECK(c.eps == 0.01);
    CHECK(c.mesh_n == 1600);
    CHECK(c.grading == "uniform");

    const RunConfig partial = parse_config(R"({"a0": 2})");
    CHECK(partial.a0 == 2.0);
    CHECK(!partial.dim.has_value());
    CHECK(!partial.mesh_n.has_value());
}

TEST_CASE("parse_config rejects typos, nesting and wrong types") {
    CHECK_THROWS_AS(parse_config(R"({"epz": 0.01})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"eps": "small"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"eps": {"value": 0.01}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"mesh_n": 3.7})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"([1, 2, 3])"), ConfigError);
    CHECK_THROWS_AS(parse_config("not json at all"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"grading": 4})"), ConfigError);
}

TEST_CASE("load_config reads a file and names it in errors") {
    TempDir tmp;
    const fs::path good = tmp.dir / "run.json";
    write_file_atomic(good, R"({"eps": 0.02, "mesh_n": 800})");
    const RunConfig c = load_config(good);
    CHECK(c.eps == 0.02);
    CHECK(c.mesh_n == 800);

    const fs::path bad = tmp.dir / "bad.json";
    write_file_atomic(bad, R"({"bogus": 1})");
    try {
        load_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
    }

    CHECK_THROWS_AS(load_config(tmp.dir / "missing.json"), ConfigError);
}

TEST_CASE("overridden_by lets set fields win") {
    RunConfig file;
    file.eps = 0.01;
    file.a0 = 2.0;
    file.mesh_n = 800;

    RunConfig flags;
    flags.eps = 0.005;
    flags.grading = "geometric";

    const RunConfig merged = file.overridden_by(flags);
    CHECK(merged.eps == 0.005);     // flag beats file
    CHECK(merged.a0 == 2.0);        // file survives where flag is absent
    CHECK(merged.mesh_n == 800);
    CHECK(merged.grading == "geometric");
    CHECK(!merged.dim.has_value());
}
