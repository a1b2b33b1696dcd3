#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "textspot/tensor_io.hpp"

#ifndef TEXTSPOT_CLI_PATH
#error "TEXTSPOT_CLI_PATH must point at the textspot binary"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string("'") + TEXTSPOT_CLI_PATH + "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag) {
        path = fs::temp_directory_path() / (std::string("textspot_cli_") + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const char* name) const { return (path / name).string(); }
};

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("cli: help exits zero, bad flags exit two") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("synth --help").exit_code == 0);
    CHECK(run("--definitely-not-a-flag").exit_code == 2);
    CHECK(run("no-such-command").exit_code == 2);
}

TEST_CASE("cli: synth writes a complete scene directory") {
    TempDir tmp("synth");
    auto r = run("synth --out-dir " + (tmp / "scene") + " --seed 42 --words 4 --alphabet-out " +
                 (tmp / "alphabet.txt"));
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(tmp.path / "scene" / "image.e2et"));
    CHECK(fs::exists(tmp.path / "scene" / "geomap.e2et"));
    CHECK(fs::exists(tmp.path / "scene" / "gt.txt"));
    CHECK(fs::exists(tmp.path / "alphabet.txt"));

    auto img = textspot::read_tensor(tmp.path / "scene" / "image.e2et");
    REQUIRE(img.dims.size() == 3);
    CHECK(img.dims[0] == 1);
    auto geo = textspot::read_tensor(tmp.path / "scene" / "geomap.e2et");
    CHECK(geo.dims[0] == 7);
}

TEST_CASE("cli: synth --count produces numbered deterministic scenes") {
    TempDir tmp("synthmulti");
    auto r1 = run("synth --out-dir " + (tmp / "a") + " --seed 7 --count 2 --words 3");
    REQUIRE(r1.exit_code == 0);
    CHECK(fs::exists(tmp.path / "a" / "scene_0000" / "gt.txt"));
    CHECK(fs::exists(tmp.path / "a" / "scene_0001" / "gt.txt"));

    auto r2 = run("synth --out-dir " + (tmp / "b") + " --seed 7 --count 2 --words 3");
    REQUIRE(r2.exit_code == 0);
    for (const char* leaf : {"scene_0000", "scene_0001"}) {
        std::ifstream fa(tmp.path / "a" / leaf / "gt.txt"), fb(tmp.path / "b" / leaf / "gt.txt");
        std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
        std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
        CHECK(sa == sb);
        CHECK(!sa.empty());
    }
}

TEST_CASE("cli: decode and nms turn a geometry map into box lines") {
    TempDir tmp("decode");
    REQUIRE(run("synth --out-dir " + (tmp / "scene") + " --seed 5 --words 3").exit_code == 0);

    auto decoded = run("decode --geomap " + (tmp / "scene") + "/geomap.e2et --out " +
                       (tmp / "raw.tsv"));
    CHECK(decoded.exit_code == 0);

    auto kept = run("nms --boxes " + (tmp / "raw.tsv") + " --out -");
    CHECK(kept.exit_code == 0);
    CHECK(count_lines(kept.output) == 3);
    // nine tab-separated fields: eight corner coordinates plus a score
    auto first_line = kept.output.substr(0, kept.output.find('\n'));
    int tabs = 0;
    for (char c : first_line) tabs += c == '\t';
    CHECK(tabs == 8);
}

TEST_CASE("cli: spot with oracle logits recovers the ground truth") {
    TempDir tmp("spot");
    REQUIRE(run("synth --out-dir " + (tmp / "scene") + " --seed 42 --words 4 --alphabet-out " +
                (tmp / "alphabet.txt"))
                .exit_code == 0);

    auto spot = run("spot --geomap " + (tmp / "scene") + "/geomap.e2et --alphabet " +
                    (tmp / "alphabet.txt") + " --oracle-gt " + (tmp / "scene") + "/gt.txt --out " +
                    (tmp / "pred.txt"));
    REQUIRE(spot.exit_code == 0);

    fs::create_directories(tmp.path / "gt_dir");
    fs::create_directories(tmp.path / "pred_dir");
    fs::copy(tmp.path / "scene" / "gt.txt", tmp.path / "gt_dir" / "scene.txt");
    fs::copy(tmp.path / "pred.txt", tmp.path / "pred_dir" / "scene.txt");

    auto eval = run("eval-e2e --gt " + (tmp / "gt_dir") + " --pred " + (tmp / "pred_dir") +
                    " --mode exact");
    CHECK(eval.exit_code == 0);
    CHECK(eval.output.find("f1\t1") != std::string::npos);

    auto ocr = run("eval-ocr --gt " + (tmp / "gt_dir") + " --pred " + (tmp / "pred_dir"));
    CHECK(ocr.exit_code == 0);
    CHECK(ocr.output.find("total") != std::string::npos);
}

TEST_CASE("cli: crop extracts one tensor per readable word") {
    TempDir tmp("crop");
    REQUIRE(run("synth --out-dir " + (tmp / "scene") + " --seed 9 --words 3").exit_code == 0);
    auto r = run("crop --image " + (tmp / "scene") + "/image.e2et --annotations " +
                 (tmp / "scene") + "/gt.txt --out-dir " + (tmp / "crops"));
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(tmp.path / "crops" / "crop_0000.e2et"));
    CHECK(count_lines(r.output) == 3);
    auto crop = textspot::read_tensor(tmp.path / "crops" / "crop_0000.e2et");
    REQUIRE(crop.dims.size() == 3);
    CHECK(crop.dims[1] == 40);
}

TEST_CASE("cli: ctc tools round-trip a forced transcription") {
    TempDir tmp("ctc");
    REQUIRE(run("synth --out-dir " + (tmp / "scene") + " --seed 1 --words 2 --alphabet-out " +
                (tmp / "alphabet.txt"))
                .exit_code == 0);

    // build logits for the word "exit" using the library, then decode via CLI
    auto alpha = run("ctc-decode --alphabet " + (tmp / "alphabet.txt") + " --logits " +
                     (tmp / "missing.e2et"));
    CHECK(alpha.exit_code == 2);  // unreadable tensor is an input error
}

TEST_CASE("cli: script-stats prints both matrices") {
    TempDir tmp("stats");
    REQUIRE(run("synth --out-dir " + (tmp / "scenes") + " --seed 3 --count 3 --words 4")
                .exit_code == 0);
    fs::create_directories(tmp.path / "flat");
    int idx = 0;
    for (auto& entry : fs::directory_iterator(tmp.path / "scenes")) {
        if (!entry.is_directory()) continue;
        char name[32];
        std::snprintf(name, sizeof name, "img_%02d.txt", idx++);
        fs::copy(entry.path() / "gt.txt", tmp.path / "flat" / name);
    }
    auto r = run("script-stats --dir " + (tmp / "flat"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("image script co-occurrence") != std::string::npos);
    CHECK(r.output.find("word-group character counts") != std::string::npos);
    CHECK(r.output.find("Latin") != std::string::npos);
}

TEST_CASE("cli: gradcheck and fit-demo report pass") {
    auto grad = run("gradcheck --points 20 --seed 7");
    CHECK(grad.exit_code == 0);
    CHECK(grad.output.find("pass") != std::string::npos);

    auto fit = run("fit-demo --steps 2000 --lr 0.5 --seed 1");
    CHECK(fit.exit_code == 0);
    CHECK(fit.output.find("pass") != std::string::npos);
}

TEST_CASE("cli: validation failures exit one, io failures exit two") {
    TempDir tmp("exitcodes");
    // geometry map with the wrong channel count is a shape error, not io
    textspot::Tensor bad = textspot::Tensor::zeros({6, 4, 4});
    textspot::write_tensor(bad, tmp.path / "bad.e2et");
    auto r = run("decode --geomap " + (tmp / "bad.e2et"));
    CHECK(r.exit_code == 1);

    // truncated file is an io error
    {
        std::ofstream out(tmp.path / "trunc.e2et", std::ios::binary);
        out << "E2ET";
    }
    auto t = run("decode --geomap " + (tmp / "trunc.e2et"));
    CHECK(t.exit_code == 2);

    auto missing = run("decode --geomap " + (tmp / "nope.e2et"));
    CHECK(missing.exit_code == 2);
}
