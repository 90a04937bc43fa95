#include "oracles.hpp"
#include "subprocess.hpp"

#include <doctest.h>

#include <cstdio>

using testutil::data_dir;
using testutil::run_gt;

namespace {

std::string data(const std::string& name) { return data_dir() + "/" + name; }

std::string temp_path(const std::string& name) { return "/tmp/gt_test_" + name; }

} // namespace

TEST_CASE("gt check exit codes") {
    CHECK(run_gt("check --rules " + data("sierpinski.json")).exit_code == 0);

    testutil::CommandResult r = run_gt("check --rules " + data("dualization.json"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("not incremental") != std::string::npos);
    CHECK(r.output.find("cospan") != std::string::npos);

    CHECK(run_gt("check --rules " + data("bad.json")).exit_code == 1);
    CHECK(run_gt("check --rules " + data("no-such-file.json")).exit_code == 1);
    CHECK(run_gt("check --rules " + data("missing-inclusion.json")).exit_code == 3);
}

TEST_CASE("gt run produces the refined triangle") {
    std::string out = temp_path("run1.json");
    testutil::CommandResult r = run_gt("run --rules " + data("sierpinski.json") + " --input " +
                                       data("triangle.json") + " --steps 1 --output " + out);
    REQUIRE(r.exit_code == 0);
    gt::Presheaf p = gt::parse_presheaf(gt::read_file(out), testutil::graph_base_ptr());
    CHECK(p.elements("v").size() == 6);
    CHECK(p.elements("e").size() == 9);
    std::remove(out.c_str());
}

TEST_CASE("gt run with zero steps re-serializes the input canonically") {
    std::string out = temp_path("run0.json");
    testutil::CommandResult r = run_gt("run --rules " + data("sierpinski.json") + " --input " +
                                       data("triangle.json") + " --steps 0 --output " + out);
    REQUIRE(r.exit_code == 0);
    gt::Presheaf original =
        gt::parse_presheaf(gt::read_file(data("triangle.json")), testutil::graph_base_ptr());
    CHECK(gt::read_file(out) == gt::serialize_presheaf(original));
    std::remove(out.c_str());
}

TEST_CASE("gt run refuses non-incremental systems unless waived") {
    std::string out = temp_path("run_dual.json");
    testutil::CommandResult refused =
        run_gt("run --rules " + data("dualization.json") + " --input " + data("p2.json") +
               " --steps 1 --output " + out);
    CHECK(refused.exit_code == 2);

    testutil::CommandResult waived =
        run_gt("run --rules " + data("dualization.json") + " --input " + data("p2.json") +
               " --steps 1 --output " + out + " --unchecked");
    CHECK(waived.exit_code == 0);
    gt::Presheaf p = gt::parse_presheaf(gt::read_file(out), testutil::graph_base_ptr());
    CHECK(gt::is_isomorphic(p, testutil::load_graph("p3.json")).has_value());
    std::remove(out.c_str());
}

TEST_CASE("gt run reports non-mono inclusions under --unchecked") {
    std::string out = temp_path("run_c3.json");
    testutil::CommandResult r =
        run_gt("run --rules " + data("dualization.json") + " --input " + data("c3.json") +
               " --steps 1 --output " + out + " --unchecked");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("non-mono") != std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("gt oracle works for non-incremental systems") {
    std::string out = temp_path("oracle.json");
    testutil::CommandResult r = run_gt("oracle --rules " + data("dualization.json") +
                                       " --input " + data("p2.json") + " --output " + out);
    REQUIRE(r.exit_code == 0);
    gt::Presheaf p = gt::parse_presheaf(gt::read_file(out), testutil::graph_base_ptr());
    CHECK(gt::is_isomorphic(p, testutil::load_graph("p3.json")).has_value());
    std::remove(out.c_str());
}

TEST_CASE("gt compare matches online and batch") {
    testutil::CommandResult r = run_gt("compare --rules " + data("sierpinski.json") +
                                       " --input " + data("triangle.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("isomorphic") != std::string::npos);

    CHECK(run_gt("compare --rules " + data("sierpinski.json") + " --input " + data("p5.json"))
              .exit_code == 0);

    // a global transformation that is not incremental still compares equal
    CHECK(run_gt("compare --rules " + data("multiedge.json") + " --input " +
                 data("parallel3.json") + " --unchecked")
              .exit_code == 0);
}

TEST_CASE("gt match lists monomorphisms with a count line") {
    std::string yv = temp_path("yv.json");
    std::string ye = temp_path("ye.json");
    gt::write_file(yv, gt::serialize_presheaf(gt::representable(testutil::graph_base_ptr(), "v")));
    gt::write_file(ye, gt::serialize_presheaf(gt::representable(testutil::graph_base_ptr(), "e")));

    testutil::CommandResult r = run_gt("match --pattern " + yv + " --target " + ye + " --rules " +
                                       data("sierpinski.json"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.rfind("2\n", 0) == 0);

    testutil::CommandResult r2 = run_gt("match --pattern " + ye + " --target " + data("c3.json") +
                                        " --rules " + data("sierpinski.json"));
    REQUIRE(r2.exit_code == 0);
    CHECK(r2.output.rfind("3\n", 0) == 0);

    testutil::CommandResult r3 =
        run_gt("match --pattern " + data("triangle.json") + " --target " + data("c3.json") +
               " --rules " + data("sierpinski.json"));
    REQUIRE(r3.exit_code == 0);
    CHECK(r3.output.rfind("0\n", 0) == 0);

    std::remove(yv.c_str());
    std::remove(ye.c_str());
}

TEST_CASE("identical invocations produce byte-identical outputs") {
    std::string out1 = temp_path("det1.json");
    std::string out2 = temp_path("det2.json");
    std::string cmd = "run --rules " + data("sierpinski.json") + " --input " +
                      data("triangle.json") + " --steps 2 --output ";
    REQUIRE(run_gt(cmd + out1).exit_code == 0);
    REQUIRE(run_gt(cmd + out2).exit_code == 0);
    CHECK(gt::read_file(out1) == gt::read_file(out2));
    std::remove(out1.c_str());
    std::remove(out2.c_str());

    testutil::CommandResult a = run_gt("check --rules " + data("multiedge.json"));
    testutil::CommandResult b = run_gt("check --rules " + data("multiedge.json"));
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.output == b.output);
}

TEST_CASE("parse and serialize round-trip the corpus") {
    for (const char* name : {"triangle.json", "p2.json", "c3.json", "parallel3.json"}) {
        gt::Presheaf p = testutil::load_graph(name);
        gt::Presheaf again =
            gt::parse_presheaf(gt::serialize_presheaf(p), testutil::graph_base_ptr());
        CHECK(again.same_presentation(p));
        CHECK(gt::serialize_presheaf(again) == gt::serialize_presheaf(p));
    }
    for (const char* name : {"sierpinski.json", "dualization.json", "multiedge.json"}) {
        gt::RuleSystem rs = testutil::load_system(name);
        gt::RuleSystem again = gt::parse_rule_system(gt::serialize_rule_system(rs));
        CHECK(gt::serialize_rule_system(again) == gt::serialize_rule_system(rs));
    }
}
