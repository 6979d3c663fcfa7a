#include "doctest.h"
#include <stdexcept>
#include "rrlab/config.hpp"
#include "rrlab/io.hpp"

#include <filesystem>
#include <fstream>

using namespace rrlab;

TEST_CASE("fmt17 is fixed-width scientific with 17 significant digits") {
    CHECK(fmt17(1.0) == "1.0000000000000000e+00");
    CHECK(fmt17(-0.125) == "-1.2500000000000000e-01");
    CHECK(fmt17(3.141592653589793) == "3.1415926535897931e+00");
}

TEST_CASE("json writer shapes and escaping") {
    Json j = Json::object();
    j["name"] = Json("a \"b\"\n");
    j["n"] = Json(3);
    Json arr = Json::array();
    arr.push_back(Json(0.5));
    arr.push_back(Json(true));
    j["xs"] = std::move(arr);
    CHECK(j.dump() == "{\"name\":\"a \\\"b\\\"\\n\",\"n\":3,\"xs\":[5.0000000000000000e-01,true]}");
}

TEST_CASE("csv table") {
    CsvTable t({"a", "b"});
    t.add_row({1.0, 2.0});
    auto s = t.str();
    CHECK(s.substr(0, 4) == "a,b\n");
    CHECK(s.find("1.0000000000000000e+00,2.0000000000000000e+00\n") != std::string::npos);
}

TEST_CASE("atomic write leaves no temp residue") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "rrlab_io_test";
    fs::create_directories(dir);
    const auto path = (dir / "out.csv").string();
    atomic_write_file(path, "hello\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "hello");
    int residues = 0;
    for (auto& e : fs::directory_iterator(dir))
        if (e.path().string().find(".tmp") != std::string::npos) ++residues;
    CHECK(residues == 0);
    fs::remove_all(dir);
}

TEST_CASE("fnv1a hash is stable") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == fnv1a_hex("a"));
    CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
}

TEST_CASE("config parsing and validation") {
    auto cfg = parse_config_text("dim 2\nmass 1.5\ncharge 0.2\n# comment\nomega0 2.0\n");
    CHECK(cfg.dim == 2);
    CHECK(cfg.mass == 1.5);
    CHECK(cfg.omega0 == 2.0);
    auto eq = parse_config_text("dim=3\nalpha=1e5\n");
    CHECK(eq.dim == 3);
    CHECK(eq.alpha == 1e5);

    CHECK_THROWS_AS(parse_config_text("dim 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("mass -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("unknown_key 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("dim 2\ndim 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("mass abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("dim 2 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("potential quartic\ndim 3\n"), ConfigError);

    // canonical text is reproducible for hashing
    CHECK(cfg.canonical_text() == parse_config_text(cfg.canonical_text()).canonical_text());
}
