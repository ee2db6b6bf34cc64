#include <doctest.h>

#include <httplib.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <thread>

#include "subprocess.hpp"
#include "synthetic.hpp"

using namespace eulaflag;
using eulaflag::testsupport::run_command;
using eulaflag::testsupport::shell_quote;

namespace {

const std::string kCli = EULAFLAG_CLI_PATH;

struct CliFixture {
    std::filesystem::path dir;
    std::filesystem::path manifest;
    std::filesystem::path model;

    CliFixture() {
        dir = std::filesystem::temp_directory_path() /
              ("eulaflag_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
        synth::CorpusConfig config;
        config.n_benign = 60;
        config.n_malicious = 20;
        config.background_terms = 200;
        config.seed = 7;
        manifest = synth::write_corpus(synth::make_corpus(config), dir / "corpus");
        model = dir / "model.json";
    }
    ~CliFixture() { std::filesystem::remove_all(dir); }

    std::string train_command() const {
        return kCli + " train --corpus " + shell_quote(manifest.string()) + " --model " +
               shell_quote(model.string()) + " --seed 3 --split-fraction 0.25";
    }
    void write(const std::string& name, const std::string& content) const {
        std::ofstream out(dir / name, std::ios::binary);
        out << content;
    }
};

}  // namespace

TEST_CASE("cli train/eval/flag/summarize workflow") {
    CliFixture fx;

    // train: writes the bundle and prints an 8-row report (7 families +
    // ensemble), deterministically.
    const auto train1 = run_command(fx.train_command());
    REQUIRE_MESSAGE(train1.exit_code == 0, train1.err);
    CHECK(std::filesystem::exists(fx.model));
    CHECK(train1.out.find("Name Of Classifier") == 0);
    CHECK(train1.out.find("SGD classifier") != std::string::npos);
    CHECK(train1.out.find("Majority vote ensemble") != std::string::npos);

    const auto train2 = run_command(fx.train_command());
    CHECK(train2.exit_code == 0);
    CHECK(train1.out == train2.out);  // byte-identical rerun

    // eval: same split spec, prints the table and writes plot data.
    const auto plot = fx.dir / "plot.csv";
    const auto eval1 = run_command(kCli + " eval --corpus " + shell_quote(fx.manifest.string()) +
                                   " --model " + shell_quote(fx.model.string()) +
                                   " --seed 3 --split-fraction 0.25 --plot-out " +
                                   shell_quote(plot.string()));
    REQUIRE_MESSAGE(eval1.exit_code == 0, eval1.err);
    CHECK(eval1.out.find("Name Of Classifier") == 0);
    {
        std::ifstream in(plot);
        std::string header;
        std::getline(in, header);
        CHECK(header == "family,accuracy_pct,error_rate_pct");
    }

    // flag: a marker-laden EULA exits 10, a clean one exits 0.
    fx.write("bad.txt",
             "The vendor may send unsolicited or unauthorized advertising at any time. "
             "Promotional messages and bundled adware are installed silently. "
             "We terminate this agreement without notice. "
             "Tracking beacons harvest and resell browsing data to marketing partners. "
             "A keylogger may monitor input for profiling. "
             "Surveillance telemetry is collected by affiliates. "
             "Popup offers and toolbar installs may hijack settings. "
             "You consent to disclose usage to vendors. "
             "Unannounced forfeiture of access may occur. "
             "Collected data is shared for advertising.");
    fx.write("good.txt",
             "The w0001 applies to w0002 and w0003. "
             "Users keep w0004 rights under w0005. "
             "The w0006 explains w0007 clearly. "
             "Every w0008 receives w0009 in writing. "
             "The w0010 may end with w0011 notice periods. "
             "Standard w0012 terms apply to w0013. "
             "The w0014 document lists w0015 duties. "
             "All w0016 updates respect w0017 settings. "
             "Nothing in w0018 removes w0019 protections. "
             "The w0020 stays in effect for w0021 years.");

    const auto bad = run_command(kCli + " flag " + shell_quote((fx.dir / "bad.txt").string()) +
                                 " --model " + shell_quote(fx.model.string()));
    REQUIRE_MESSAGE(bad.exit_code == 10, bad.err);
    const auto bad_json = nlohmann::json::parse(bad.out);
    CHECK(bad_json["verdict"]["final"] == "malicious");
    CHECK(bad_json["summary"]["source_sentence_count"] == 10);
    CHECK(bad_json["summary"]["selected"].size() == 2);  // round(0.2 * 10)
    CHECK(bad_json["model_fingerprint"].get<std::string>().size() == 16);

    const auto good = run_command(kCli + " flag " + shell_quote((fx.dir / "good.txt").string()) +
                                  " --model " + shell_quote(fx.model.string()));
    REQUIRE_MESSAGE(good.exit_code == 0, good.err);
    const auto good_json = nlohmann::json::parse(good.out);
    CHECK(good_json["verdict"]["final"] == "benign");
    CHECK(good_json["verdict"]["tally"]["benign"].get<int>() +
              good_json["verdict"]["tally"]["malicious"].get<int>() ==
          7);

    // --mode best votes with the single strongest member.
    const auto best = run_command(kCli + " flag " + shell_quote((fx.dir / "bad.txt").string()) +
                                  " --model " + shell_quote(fx.model.string()) + " --mode best");
    CHECK(best.exit_code == 10);
    CHECK(nlohmann::json::parse(best.out)["verdict"]["votes"].size() == 1);

    // --plain renders the human report.
    const auto plain = run_command(kCli + " flag " + shell_quote((fx.dir / "bad.txt").string()) +
                                   " --model " + shell_quote(fx.model.string()) + " --plain");
    CHECK(plain.exit_code == 10);
    CHECK(plain.out.find("verdict: malicious") != std::string::npos);

    // summarize: ratio 1.0 echoes the full sentence list.
    const auto summ = run_command(kCli + " summarize " +
                                  shell_quote((fx.dir / "good.txt").string()) +
                                  " --ratio 1.0 --summarizer lexrank");
    REQUIRE(summ.exit_code == 0);
    const auto summ_json = nlohmann::json::parse(summ.out);
    CHECK(summ_json["selected"].size() == 10);
    CHECK(summ_json["algorithm"] == "lexrank");

    // every summarizer at the default ratio returns round(0.2*10) = 2.
    for (const std::string algo : {"textrank", "lexrank", "bm25", "lsa", "ri"}) {
        const auto result = run_command(kCli + " summarize " +
                                        shell_quote((fx.dir / "good.txt").string()) +
                                        " --summarizer " + algo);
        REQUIRE_MESSAGE(result.exit_code == 0, algo << ": " << result.err);
        CHECK(nlohmann::json::parse(result.out)["selected"].size() == 2);
    }
}

TEST_CASE("cli error exit codes") {
    CliFixture fx;

    // missing manifest -> 2 with a diagnostic naming the path
    const auto missing = run_command(kCli + " train --corpus /nowhere/manifest.jsonl --model " +
                                     shell_quote(fx.model.string()));
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("/nowhere/manifest.jsonl") != std::string::npos);

    // unreadable model -> 4
    const auto badmodel = run_command(kCli + " flag " + shell_quote(fx.manifest.string()) +
                                      " --model /nowhere/model.json");
    CHECK(badmodel.exit_code == 4);

    // empty document -> 2
    fx.write("empty.txt", "   ");
    const auto empty = run_command(kCli + " summarize " +
                                   shell_quote((fx.dir / "empty.txt").string()));
    CHECK(empty.exit_code == 2);

    // corpus too small for the requested split -> 2
    fx.write("solo/doc.txt", "One line.");
    std::filesystem::create_directories(fx.dir / "solo");
    fx.write("solo/doc.txt", "One line.");
    fx.write("solo/manifest.jsonl", R"({"id":"a","path":"doc.txt","label":"benign"})"
                                    "\n");
    const auto solo = run_command(kCli + " train --corpus " +
                                  shell_quote((fx.dir / "solo/manifest.jsonl").string()) +
                                  " --model " + shell_quote(fx.model.string()));
    CHECK(solo.exit_code == 2);
}

TEST_CASE("cli flag verdicts match between file and url inputs") {
    CliFixture fx;
    REQUIRE(run_command(fx.train_command()).exit_code == 0);

    const std::string text =
        "Bundled adware and tracking beacons harvest data. "
        "Unsolicited promotional messages arrive constantly. "
        "The agreement may terminate without notice. "
        "Telemetry is resold to marketing partners. "
        "A toolbar hijacks the browser silently.";
    fx.write("doc.txt", text);

    httplib::Server server;
    server.Get("/doc", [&](const httplib::Request&, httplib::Response& res) {
        res.set_content(text, "text/plain");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const auto from_file = run_command(kCli + " flag " +
                                       shell_quote((fx.dir / "doc.txt").string()) + " --model " +
                                       shell_quote(fx.model.string()));
    const auto from_url = run_command(kCli + " flag http://127.0.0.1:" + std::to_string(port) +
                                      "/doc --model " + shell_quote(fx.model.string()));
    server.stop();
    thread.join();

    REQUIRE(from_file.exit_code == from_url.exit_code);
    const auto a = nlohmann::json::parse(from_file.out);
    const auto b = nlohmann::json::parse(from_url.out);
    CHECK(a["verdict"] == b["verdict"]);
    CHECK(a["summary"] == b["summary"]);
}

TEST_CASE("cli stopword override changes tokenization") {
    CliFixture fx;
    fx.write("stop.txt", "clause\n");
    fx.write("doc.txt", "Clause alpha beta. Clause gamma delta. Clause epsilon zeta.");

    const auto with_default = run_command(kCli + " summarize " +
                                          shell_quote((fx.dir / "doc.txt").string()) +
                                          " --ratio 1.0");
    const auto with_override = run_command(
        kCli + " summarize " + shell_quote((fx.dir / "doc.txt").string()) +
        " --ratio 1.0 --stopwords " + shell_quote((fx.dir / "stop.txt").string()));
    CHECK(with_default.exit_code == 0);
    CHECK(with_override.exit_code == 0);

    const auto env_override = run_command(
        "EULAFLAG_STOPWORDS=" + shell_quote((fx.dir / "stop.txt").string()) + " " + kCli +
        " summarize " + shell_quote((fx.dir / "doc.txt").string()) + " --ratio 1.0");
    CHECK(env_override.exit_code == 0);
    CHECK(env_override.out == with_override.out);
}
