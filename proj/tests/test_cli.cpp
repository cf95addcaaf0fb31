#include "groupoidrep/cli.hpp"
#include "groupoidrep/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace groupoidrep;

namespace {

std::string data(const std::string& name) { return std::string(GROUPOIDREP_DATA_DIR) + "/" + name; }

RunResult run_cmd(const std::string& command, const std::string& input, std::uint64_t seed = 0) {
    RunConfig c;
    c.command = command;
    c.input = input;
    c.seed = seed;
    return run(c);
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("groupoidrep_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("decompose on S3") {
    RunResult r = run_cmd("decompose", data("s3.json"), 7);
    CHECK(r.status == 0);
    CHECK(r.report["summand_count"] == 3);
    CHECK(r.report["summand_dims"] == json::array({1, 1, 2}));
    CHECK(r.report["intertwining_residual"].get<double>() < 1e-9);
    CHECK(r.report["seed"] == 7);
    CHECK(r.report.contains("tol"));
}

TEST_CASE("peterweyl on pair(3)") {
    RunResult r = run_cmd("peterweyl", data("pair3.json"));
    CHECK(r.status == 0);
    REQUIRE(r.report["dimension_identity"].size() == 3);
    for (const auto& d : r.report["dimension_identity"]) {
        CHECK(d["lhs"] == 1);
        CHECK(d["rhs"] == 1);
    }
}

TEST_CASE("conv-roundtrip on gauge(2, Z/2)") {
    RunResult r = run_cmd("conv-roundtrip", data("gauge2z2.json"), 1);
    CHECK(r.status == 0);
    CHECK(r.report["associativity_residual"].get<double>() < 1e-10);
    for (const auto& [name, rt] : r.report["roundtrip"].items()) {
        CHECK(rt["extract_residual"].get<double>() < 1e-10);
        CHECK(rt["homomorphism_residual"].get<double>() < 1e-10);
    }
}

TEST_CASE("every command passes on the bundled inputs") {
    for (const std::string& file : {"s3.json", "pair3.json", "gauge2z2.json"})
        for (const std::string& cmd : {"validate", "orbits", "haar-check", "schur", "peterweyl", "conv-roundtrip",
                                        "morita", "bisections", "repring"}) {
            RunResult r = run_cmd(cmd, data(file), 1);
            CHECK_MESSAGE(r.status == 0, cmd << " " << file << ": " << r.report.dump());
        }
}

TEST_CASE("field topology") {
    CHECK(run_cmd("field-topology", data("z2_field.json")).status == 0);
    RunResult bump = run_cmd("field-topology", data("z2_field_reflected.json"));
    CHECK(bump.status == 1);
}

TEST_CASE("deterministic reports") {
    RunResult a = run_cmd("decompose", data("s3.json"), 11);
    RunResult b = run_cmd("decompose", data("s3.json"), 11);
    CHECK(a.report == b.report);
}

TEST_CASE("dumped matrices are re-ingested by rep-validate") {
    RunResult r = run_cmd("decompose", data("s3.json"), 7);
    json doc = load_document(data("s3.json"));
    json reps = json::object();
    int i = 0;
    for (const auto& s : r.report["summands"]) reps["summand" + std::to_string(i++)] = s["rep"];
    doc["representations"] = reps;
    std::string path = temp_file("summands.json", doc.dump());
    RunResult v = run_cmd("rep-validate", path);
    CHECK_MESSAGE(v.status == 0, v.report.dump());
}

TEST_CASE("input errors exit with 2") {
    SUBCASE("parse error with position") {
        std::string path = temp_file("broken.json", "{\n  \"groupoid\": {\"pair\": 2},\n  oops\n}");
        RunResult r = run_cmd("validate", path);
        CHECK(r.status == 2);
        std::string msg = r.report["error"]["message"];
        CHECK(msg.find(":3:") != std::string::npos);
    }
    SUBCASE("missing file") { CHECK(run_cmd("validate", "/nonexistent/x.json").status == 2); }
    SUBCASE("unknown command") { CHECK(run_cmd("frobnicate", data("s3.json")).status == 2); }
    SUBCASE("no representations for rep-validate") { CHECK(run_cmd("rep-validate", data("pair3.json")).status == 2); }
    SUBCASE("bad tolerance") {
        RunConfig c;
        c.command = "validate";
        c.input = data("s3.json");
        c.tol = -1;
        CHECK(run(c).status == 2);
    }
}

TEST_CASE("property failures exit with 1") {
    std::string path = temp_file("badhaar.json", R"({"groupoid": {"group": "Z2"}, "haar": {"weights": [1, 2]}})");
    RunResult r = run_cmd("haar-check", path);
    CHECK(r.status == 1);
    std::string rep = temp_file("badrep.json", R"({"groupoid": {"group": "Z2"},
        "representations": {"bad": {"dims": [1], "matrices": [[[1]], [[2]]]}}})");
    CHECK(run_cmd("rep-validate", rep).status == 1);
}

TEST_CASE("text output") {
    RunConfig c;
    c.command = "validate";
    c.input = data("s3.json");
    c.format = "text";
    std::ostringstream out, err;
    CHECK(run_and_write(c, out, err) == 0);
    CHECK(out.str().find("axioms.ok: true") != std::string::npos);
}

TEST_CASE("io") {
    CHECK(sig12(1.0 / 3.0) == 0.333333333333);
    Matrix a(2, 2);
    a << cplx(1, 2), 3, cplx(0, -1), 0.5;
    CHECK(matrix_from_json(to_json(a)) == a);
    CHECK(group_from_json("S3").order == 6);
    CHECK(group_from_json("Z2xZ3").order == 6);
    CHECK(group_from_json("Q8").order == 8);
    CHECK(group_from_json(json{{"table", {{0, 1}, {1, 0}}}}).order == 2);
    CHECK_THROWS_AS(group_from_json("Y7"), InputError);

    Groupoid p = make_pair(3);
    LoadedGroupoid back = groupoid_from_json(to_json(p));
    CHECK(back.groupoid.comp_table() == p.comp_table());
    CHECK(groupoid_from_json(json{{"gauge", {{"group", "Z2"}, {"base", 2}}}}).groupoid.num_arrows() == 8);
    CHECK(groupoid_from_json(json{{"bundle", {"Z2", "Z3"}}}).groupoid.num_arrows() == 5);

    CHECK_THROWS_AS(parse_document("{\"a\": [1,\n 2,,]}"), InputError);
    try {
        parse_document("{\"a\": [1,\n 2,,]}", "doc");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).rfind("doc:2:", 0) == 0);
    }
}
