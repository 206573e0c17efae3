#include "vopt/cli.hpp"
#include "vopt/report_json.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace vopt;

namespace {

struct RunOutcome {
    int code;
    std::string out;
    std::string err;
};

RunOutcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

/// Minimal JSON-Schema checker covering the subset the published schema uses:
/// type, required, properties, items, enum, oneOf and local $refs.
class SchemaChecker {
public:
    explicit SchemaChecker(const Json& root) : root_(root) {}

    bool validate(const Json& value, const Json& schema) const {
        if (schema.contains("$ref")) {
            std::string ref = schema["$ref"];
            const char* prefix = "#/$defs/";
            if (ref.rfind(prefix, 0) != 0) return false;
            return validate(value, root_["$defs"][ref.substr(std::string(prefix).size())]);
        }
        if (schema.contains("oneOf")) {
            int hits = 0;
            for (const auto& sub : schema["oneOf"])
                if (validate(value, sub)) ++hits;
            return hits == 1;
        }
        if (schema.contains("enum")) {
            for (const auto& e : schema["enum"])
                if (e == value) return true;
            return false;
        }
        if (schema.contains("type") && !check_type(value, schema["type"])) return false;
        if (schema.contains("required")) {
            if (!value.is_object()) return false;
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>())) return false;
        }
        if (schema.contains("properties") && value.is_object()) {
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
                if (value.contains(it.key()) && !validate(value[it.key()], it.value()))
                    return false;
            }
        }
        if (schema.contains("items") && value.is_array()) {
            for (const auto& item : value)
                if (!validate(item, schema["items"])) return false;
        }
        return true;
    }

private:
    static bool check_one_type(const Json& value, const std::string& t) {
        if (t == "object") return value.is_object();
        if (t == "array") return value.is_array();
        if (t == "string") return value.is_string();
        if (t == "number") return value.is_number();
        if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
        if (t == "boolean") return value.is_boolean();
        if (t == "null") return value.is_null();
        return false;
    }
    static bool check_type(const Json& value, const Json& t) {
        if (t.is_string()) return check_one_type(value, t.get<std::string>());
        for (const auto& opt : t)
            if (check_one_type(value, opt.get<std::string>())) return true;
        return false;
    }

    const Json& root_;
};

Json load_schema() {
    std::ifstream in("schema/report.schema.json");
    REQUIRE(in.good());
    Json schema;
    in >> schema;
    return schema;
}

} // namespace

TEST_CASE("cli: eval prints the Motzkin constant term") {
    RunOutcome r = run({"eval", "--map", "data/motzkin.vp", "--at", "0,0", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
}

TEST_CASE("cli: rabier on the padded linear map gives 1/sqrt(2)") {
    RunOutcome r = run({"rabier", "--map", "data/linear_indep.vp", "--at", "1,2,3"});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(std::abs(j["result"]["value"].get<double>() - 1.0 / std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("cli: parse and config failures exit with 2") {
    CHECK(run({"eval", "--map", "data/missing.vp", "--at", "0,0"}).code == 2);
    CHECK(run({"eval", "--map", "data/motzkin.vp", "--at", "0"}).code == 2);
    CHECK(run({"eval", "--map", "data/motzkin.vp", "--at", "a,b"}).code == 2);
    CHECK(run({"tangency", "--map", "data/motzkin.vp", "--budget", "bogus_key=3"}).code == 2);
    CHECK(run({"nope"}).code == 2);
    std::ofstream bad("/tmp/vopt_bad.vp");
    bad << "vars: 2\nx1 + + x2\n";
    bad.close();
    RunOutcome r = run({"eval", "--map", "/tmp/vopt_bad.vp", "--at", "0,0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("parse error") != std::string::npos);
}

TEST_CASE("cli: inconclusive existence exits with 3 and still writes the report") {
    RunOutcome r = run({"existence", "--map", "data/hyperbola.vp", "--seed", "5", "--budget",
                        "n_seeds=8", "search_starts=24"});
    CHECK(r.code == 3);
    Json j = Json::parse(r.out);
    CHECK(j["report"]["verdict"] == "no_conclusion");
}

TEST_CASE("cli: fixed seed gives byte-identical reports") {
    std::vector<std::string> args = {"pareto", "--map", "data/motzkin.vp", "--seed", "5",
                                     "--budget", "n_starts=200"};
    RunOutcome a = run(args);
    RunOutcome b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("cli: emitted reports validate against the published schema") {
    Json schema = load_schema();
    SchemaChecker checker(schema);
    std::vector<std::vector<std::string>> cases = {
        {"eval", "--map", "data/motzkin.vp", "--at", "0.5,0.25"},
        {"rabier", "--map", "data/ps_pair.vp", "--at", "3,0"},
        {"tangency", "--map", "data/hyperbola.vp", "--seed", "3", "--budget", "n_seeds=6"},
        {"sublevel", "--map", "data/motzkin.vp", "--tbar", "1.5", "--seed", "3", "--budget",
         "n_starts=12"},
        {"newton", "--map", "data/quartic_axis.vp", "--seed", "3"},
        {"pareto", "--map", "data/motzkin.vp", "--seed", "3", "--tbar", "0.5", "--budget",
         "n_starts=150"},
        {"existence", "--map", "data/attained.vp", "--seed", "3", "--budget",
         "search_starts=24"},
    };
    for (const auto& args : cases) {
        RunOutcome r = run(args);
        INFO(args[0]);
        CHECK((r.code == 0 || r.code == 3));
        Json report = Json::parse(r.out, nullptr, false);
        REQUIRE(!report.is_discarded());
        CHECK(checker.validate(report, schema));
        // round-trip: re-serializing the parsed report is stable
        CHECK(Json::parse(report.dump()) == report);
    }
}

TEST_CASE("cli: tangency csv dump writes one file per trace") {
    std::filesystem::remove_all("/tmp/vopt_traces");
    RunOutcome r = run({"tangency", "--map", "data/hyperbola.vp", "--seed", "3", "--format",
                        "csv", "--out", "/tmp/vopt_traces", "--budget", "n_seeds=6"});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    int written = j["traces_written"].get<int>();
    CHECK(written >= 1);
    int found = 0;
    for (auto& e : std::filesystem::directory_iterator("/tmp/vopt_traces")) {
        ++found;
        std::ifstream in(e.path());
        std::string header;
        std::getline(in, header);
        CHECK(header.rfind("radius,", 0) == 0);
    }
    CHECK(found == written);
}

TEST_CASE("cli: help exits cleanly") {
    CHECK(run({"--help"}).code == 0);
}
