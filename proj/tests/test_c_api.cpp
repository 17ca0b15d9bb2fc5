#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "gammalind/gammalind.h"

TEST_CASE("lattice handle reports counts and validates") {
    gl_graph* g = nullptr;
    REQUIRE(gl_graph_from_lattice("honeycomb", 4, 4, 1, &g) == GL_OK);
    gl_graph_info info{};
    REQUIRE(gl_graph_info_get(g, &info) == GL_OK);
    CHECK(info.vertices == 32);
    CHECK(info.edges == 48);
    CHECK(info.plaquettes == 16);
    CHECK(info.loops == 2);
    CHECK(info.colors == 3);
    CHECK(info.strong_fluxes == 17);
    CHECK(info.weak_fluxes == 48);
    int ok = 0;
    char* report = nullptr;
    REQUIRE(gl_graph_validate(g, &ok, &report) == GL_OK);
    CHECK(ok == 1);
    CHECK(report != nullptr);
    gl_string_free(report);
    gl_graph_free(g);
}

TEST_CASE("errors come back as status codes with a message") {
    gl_graph* g = nullptr;
    CHECK(gl_graph_from_lattice("kagome", 4, 4, 1, &g) == GL_INVALID_ARGUMENT);
    CHECK(g == nullptr);
    CHECK(std::string(gl_last_error()).find("kagome") != std::string::npos);
    CHECK(gl_graph_from_lattice("square", 4, 4, 1, nullptr) == GL_INVALID_ARGUMENT);
    CHECK(gl_graph_from_file("/nonexistent/graph.txt", &g) == GL_IO);

    const char* path = "c_api_bad_graph.txt";
    {
        std::ofstream out(path);
        out << "3 2\n0 1 1 1.0\n0 9 2 1.0\n";
    }
    CHECK(gl_graph_from_file(path, &g) == GL_PARSE);
    CHECK(std::string(gl_last_error()).find("line 3") != std::string::npos);
    std::remove(path);
}

TEST_CASE("sweep through the C API") {
    gl_graph* g = nullptr;
    REQUIRE(gl_graph_from_lattice("square", 4, 4, 1, &g) == GL_OK);
    gl_sector* s = nullptr;
    REQUIRE(gl_sector_uniform(g, "0", &s) == GL_OK);
    const int sites[] = {0, 5};
    REQUIRE(gl_sector_set_flips(s, nullptr, 0, sites, 2) == GL_OK);

    char* json = nullptr;
    REQUIRE(gl_sector_describe(s, &json) == GL_OK);
    CHECK(std::string(json).find("\"V\"") != std::string::npos);
    gl_string_free(json);

    gl_sweep_params p;
    gl_sweep_params_default(&p);
    p.gamma_min = 0.1;
    p.gamma_max = 10;
    p.points = 3;
    p.n_max = 2;
    gl_gap_row* rows = nullptr;
    size_t count = 0;
    REQUIRE(gl_sweep_run(g, s, &p, &rows, &count) == GL_OK);
    REQUIRE(count == 3 * 2);
    for (size_t k = 0; k < count; ++k) {
        CHECK(rows[k].number_mode == 1);
        CHECK(rows[k].gap >= rows[k].bound_lower - 1e-10);
        CHECK(rows[k].gap <= rows[k].bound_upper + 1e-10);
    }
    CHECK(gl_rows_write_csv(rows, count, "c_api_rows.csv", 0) == GL_OK);
    std::ifstream in("c_api_rows.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("gamma,n,gap", 0) == 0);
    std::remove("c_api_rows.csv");
    gl_rows_free(rows);

    p.mode = GL_MODE_NUMBER;
    const int edges[] = {1};
    REQUIRE(gl_sector_set_flips(s, edges, 1, sites, 2) == GL_OK);
    CHECK(gl_sweep_run(g, s, &p, &rows, &count) == GL_MODE_MISMATCH);
    p.points = 0;
    p.mode = GL_MODE_AUTO;
    CHECK(gl_sweep_run(g, s, &p, &rows, &count) == GL_INVALID_ARGUMENT);

    gl_sector_free(s);
    gl_graph_free(g);
}

TEST_CASE("inconsistent sector files are rejected") {
    gl_graph* g = nullptr;
    REQUIRE(gl_graph_from_lattice("honeycomb", 2, 2, 1, &g) == GL_OK);
    gl_sector* s = nullptr;
    CHECK(gl_sector_uniform(g, "+pi/2", &s) == GL_INCONSISTENT_FLUX);
    CHECK(gl_sector_random(g, 3, &s) == GL_OK);
    const int bad[] = {999};
    CHECK(gl_sector_set_flips(s, bad, 1, nullptr, 0) == GL_INVALID_ARGUMENT);
    gl_sector_free(s);
    gl_graph_free(g);
}

TEST_CASE("fast verification through the C API") {
    int failures = -1;
    int seen = 0;
    auto cb = [](int, const char*, int, const char*, double, void* user) { ++*static_cast<int*>(user); };
    REQUIRE(gl_verify(GL_VERIFY_FAST, cb, &seen, &failures) == GL_OK);
    CHECK(failures == 0);
    CHECK(seen == 3);
    CHECK(std::string(gl_version()).size() > 0);
}
