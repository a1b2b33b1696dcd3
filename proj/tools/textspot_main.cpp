// Command-line front end: each subcommand wraps one library entry point so
// the whole detect/recognize/evaluate loop can be driven from files.
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "textspot/alphabet.hpp"
#include "textspot/annotation.hpp"
#include "textspot/ctc.hpp"
#include "textspot/error.hpp"
#include "textspot/eval.hpp"
#include "textspot/geometry.hpp"
#include "textspot/losses.hpp"
#include "textspot/nms.hpp"
#include "textspot/pipeline.hpp"
#include "textspot/roi.hpp"
#include "textspot/script_stats.hpp"
#include "textspot/synth.hpp"
#include "textspot/tensor_io.hpp"
#include "textspot/unicode.hpp"

namespace fs = std::filesystem;
using namespace textspot;

namespace {

constexpr double kGradTolIou = 1e-4;
constexpr double kGradTolOther = 1e-6;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary | std::ios::trunc);
    require(file.good(), ErrorCode::IoFailure, "cannot open " + path + " for writing");
    return file;
}

void write_boxes_tsv(const std::vector<OrientedBox>& boxes, const std::string& path) {
    std::ofstream file;
    std::ostream& out = open_out(file, path);
    for (const OrientedBox& b : boxes) {
        for (int i = 0; i < 4; ++i)
            out << format_double(b.quad[i].x) << '\t' << format_double(b.quad[i].y) << '\t';
        out << format_double(b.score) << '\n';
    }
    out.flush();
    require(out.good(), ErrorCode::IoFailure, "write failed");
}

std::vector<OrientedBox> read_boxes_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::IoFailure, "cannot open " + path);
    std::vector<OrientedBox> boxes;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> fields;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t tab = line.find('\t', pos);
            std::string_view field(line.data() + pos,
                                   (tab == std::string::npos ? line.size() : tab) - pos);
            double v = 0.0;
            auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            require(ec == std::errc() && p == field.data() + field.size(),
                    ErrorCode::MalformedLine,
                    path + ":" + std::to_string(line_number) + ": bad number '" +
                        std::string(field) + "'");
            fields.push_back(v);
            if (tab == std::string::npos) break;
            pos = tab + 1;
        }
        require(fields.size() == 9, ErrorCode::MalformedLine,
                path + ":" + std::to_string(line_number) +
                    ": expected 9 tab-separated values (8 corners + score)");
        OrientedBox b;
        for (int i = 0; i < 4; ++i) b.quad[i] = {fields[2 * i], fields[2 * i + 1]};
        b.score = fields[8];
        b.angle = box_angle(b.quad);
        boxes.push_back(b);
    }
    require(!in.bad(), ErrorCode::IoFailure, "read failed for " + path);
    return boxes;
}

// Annotation files of a directory, sorted by filename for determinism.
std::vector<fs::path> list_annotation_files(const std::string& dir) {
    require(fs::is_directory(dir), ErrorCode::IoFailure, dir + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

TranscriptionMode parse_mode(const std::string& mode) {
    if (mode == "exact") return TranscriptionMode::Exact;
    if (mode == "ed1") return TranscriptionMode::EditDistance1;
    if (mode == "ignore") return TranscriptionMode::Ignore;
    if (mode == "script") return TranscriptionMode::ScriptMatch;
    fail(ErrorCode::InvalidArgument,
         "unknown mode '" + mode + "' (expected exact, ed1, ignore or script)");
}

void print_script_matrix_header(std::ostream& out) {
    out << "row";
    for (int i = 0; i < kScriptClassCount; ++i)
        out << '\t' << script_name(static_cast<ScriptClass>(i));
    out << '\n';
}

int cmd_decode(const std::string& geomap, double threshold, double scale,
               const std::string& out) {
    GeometryMap map = GeometryMap::from_tensor(read_tensor(geomap));
    write_boxes_tsv(threshold_and_decode(map, threshold, scale), out);
    return 0;
}

int cmd_nms(const std::string& boxes_path, double merge_iou, double final_iou,
            const std::string& out) {
    write_boxes_tsv(run_nms(read_boxes_tsv(boxes_path), {merge_iou, final_iou}), out);
    return 0;
}

int cmd_crop(const std::string& image_path, const std::string& annotations, int height,
             const std::string& out_dir) {
    Tensor image = read_tensor(image_path);
    std::vector<WordAnnotation> words = read_annotations(annotations);
    fs::create_directories(out_dir);
    int index = 0;
    for (const WordAnnotation& w : words) {
        if (w.dont_care) continue;
        Tensor crop = sample_quad(image, w.quad, height);
        RoiDims dims = roi_dims(w.quad, height);
        char name[32];
        std::snprintf(name, sizeof name, "crop_%04d.e2et", index);
        write_tensor(crop, fs::path(out_dir) / name);
        std::cout << index << '\t' << name << '\t' << dims.width << '\t' << dims.ctc_frames
                  << '\t' << w.transcription << '\n';
        ++index;
    }
    return 0;
}

int cmd_ctc_decode(const std::string& logits_path, const std::string& alphabet_path) {
    LogitMatrix logits = LogitMatrix::from_tensor(read_tensor(logits_path));
    Alphabet alphabet = read_alphabet(alphabet_path);
    std::cout << greedy_decode(logits, alphabet) << '\n';
    return 0;
}

int cmd_ctc_loss(const std::string& logits_path, const std::string& alphabet_path,
                 const std::string& label_text, bool reference,
                 const std::string& grad_out) {
    LogitMatrix logits = LogitMatrix::from_tensor(read_tensor(logits_path));
    Alphabet alphabet = read_alphabet(alphabet_path);
    LabelSequence label = encode_label(label_text, alphabet);
    CtcResult result = ctc_loss(logits, label);
    std::cout << "loss\t" << format_double(result.loss) << '\n';
    if (reference)
        std::cout << "reference\t" << format_double(ctc_loss_brute_force(logits, label))
                  << '\n';
    if (!grad_out.empty()) write_tensor(result.grad.to_tensor(), grad_out);
    return 0;
}

int cmd_script_stats(const std::string& dir, bool include_dont_care) {
    std::vector<std::vector<WordAnnotation>> corpus;
    for (const fs::path& file : list_annotation_files(dir))
        corpus.push_back(read_annotations(file));

    ScriptMatrix img = image_cooccurrence(corpus, include_dont_care);
    std::cout << "# image script co-occurrence (" << corpus.size() << " images)\n";
    print_script_matrix_header(std::cout);
    for (int i = 0; i < kScriptClassCount; ++i) {
        std::cout << script_name(static_cast<ScriptClass>(i));
        for (int j = 0; j < kScriptClassCount; ++j) std::cout << '\t' << img[i][j];
        std::cout << '\n';
    }

    WordGroupMatrix words = word_cooccurrence(corpus, include_dont_care);
    std::cout << "# word-group character counts\n";
    print_script_matrix_header(std::cout);
    for (int g = 0; g < kWordGroupCount; ++g) {
        std::cout << word_group_name(static_cast<WordGroup>(g));
        for (int j = 0; j < kScriptClassCount; ++j) std::cout << '\t' << words[g][j];
        std::cout << '\n';
    }
    return 0;
}

int cmd_eval_e2e(const std::string& gt_dir, const std::string& pred_dir, double iou,
                 const std::string& mode, int min_len, bool ignore_case) {
    MatchConfig cfg;
    cfg.iou_threshold = iou;
    cfg.mode = parse_mode(mode);
    cfg.min_gt_length = min_len;
    cfg.ignore_case = ignore_case;

    EvalCounts totals;
    for (const fs::path& gt_file : list_annotation_files(gt_dir)) {
        std::vector<WordAnnotation> gts = read_annotations(gt_file);
        fs::path pred_file = fs::path(pred_dir) / gt_file.filename();
        std::vector<WordAnnotation> preds;
        if (fs::exists(pred_file)) preds = read_annotations(pred_file);
        totals += match_detections(gts, preds, cfg).counts;
    }
    EvalReport report = make_report(totals);
    std::cout << "precision\t" << format_fixed(report.precision) << '\n'
              << "recall\t" << format_fixed(report.recall) << '\n'
              << "f1\t" << format_fixed(report.f1) << '\n'
              << "matched\t" << report.counts.matched << '\n'
              << "num_gt\t" << report.counts.num_gt << '\n'
              << "num_pred\t" << report.counts.num_pred << '\n';
    return 0;
}

int cmd_eval_ocr(const std::string& gt_dir, const std::string& pred_dir, double iou) {
    MatchConfig cfg;
    cfg.iou_threshold = iou;
    cfg.mode = TranscriptionMode::Ignore;

    std::vector<OcrPair> pairs;
    int image_id = 0;
    for (const fs::path& gt_file : list_annotation_files(gt_dir)) {
        std::vector<WordAnnotation> gts = read_annotations(gt_file);
        fs::path pred_file = fs::path(pred_dir) / gt_file.filename();
        std::vector<WordAnnotation> preds;
        if (fs::exists(pred_file)) preds = read_annotations(pred_file);
        MatchResult match = match_detections(gts, preds, cfg);
        for (auto [g, p] : match.assigned) {
            if (gts[g].transcription.empty()) continue;
            pairs.push_back({gts[g].transcription, preds[p].transcription, image_id});
        }
        ++image_id;
    }

    OcrReport report = ocr_report(pairs);
    std::cout << "script\taccuracy\tedits_per_char\tinstances\tcharacters\timages\n";
    auto print_row = [](std::string_view name, const OcrRow& r) {
        std::cout << name << '\t' << (r.has_metrics ? format_fixed(r.accuracy) : "-") << '\t'
                  << (r.has_metrics ? format_fixed(r.edits_per_char) : "-") << '\t'
                  << r.instances << '\t' << r.characters << '\t' << r.images << '\n';
    };
    for (int i = 0; i < kScriptClassCount; ++i)
        print_row(script_name(static_cast<ScriptClass>(i)), report.per_script[i]);
    print_row("total", report.total);
    return 0;
}

int cmd_synth(const std::string& out_dir, std::uint64_t seed, int words, int count,
              int width, int height, double vertical_prob, double angle_min,
              double angle_max, double scale, const std::string& alphabet_out) {
    SceneSpec spec;
    spec.width = width;
    spec.height = height;
    spec.word_count = words;
    spec.vertical_probability = vertical_prob;
    spec.angle_min = angle_min;
    spec.angle_max = angle_max;
    spec.scale = scale;

    fs::create_directories(out_dir);
    require(count >= 1, ErrorCode::InvalidArgument, "count must be >= 1");
    for (int i = 0; i < count; ++i) {
        spec.seed = seed + static_cast<std::uint64_t>(i);
        Scene scene = generate_scene(spec);
        fs::path dir = out_dir;
        if (count > 1) {
            char sub[32];
            std::snprintf(sub, sizeof sub, "scene_%04d", i);
            dir /= sub;
            fs::create_directories(dir);
        }
        write_tensor(scene.image, dir / "image.e2et");
        write_tensor(scene.geo.channels, dir / "geomap.e2et");
        write_annotations(scene.words, dir / "gt.txt");
        std::cout << dir.string() << '\t' << scene.words.size() << '\t'
                  << (scene.placement_failed ? "short" : "ok") << '\n';
    }
    if (!alphabet_out.empty()) write_alphabet(default_alphabet(), alphabet_out);
    return 0;
}

int cmd_gradcheck(int points, std::uint64_t seed, double h) {
    GradCheckReport report = run_gradient_suite(points, seed, h);
    bool ok = report.iou <= kGradTolIou && report.dice <= kGradTolOther &&
              report.angle <= kGradTolOther && report.ctc <= kGradTolOther;
    std::cout << "loss\tmax_rel_err\ttolerance\n";
    std::cout << "iou\t" << format_double(report.iou) << '\t' << format_double(kGradTolIou)
              << '\n';
    std::cout << "dice\t" << format_double(report.dice) << '\t'
              << format_double(kGradTolOther) << '\n';
    std::cout << "angle\t" << format_double(report.angle) << '\t'
              << format_double(kGradTolOther) << '\n';
    std::cout << "ctc\t" << format_double(report.ctc) << '\t' << format_double(kGradTolOther)
              << '\n';
    std::cout << (ok ? "pass" : "fail") << '\n';
    return ok ? 0 : 1;
}

// Two small words on a 16x16 grid; the same layout the library test suite
// drives, so the demo is reproducible end to end.
GeometryMap fit_demo_target(std::vector<Quad>* quads_out) {
    GeometryMap gt = GeometryMap::zeros(16, 16);
    std::vector<Quad> quads = {make_box_quad({20.0, 18.0}, 16.0, 8.0, 0.0),
                               make_box_quad({42.0, 44.0}, 16.0, 8.0, 0.0)};
    for (const Quad& q : quads) encode_box(gt, q, 4.0, 0.6);
    if (quads_out) *quads_out = quads;
    return gt;
}

int cmd_fit_demo(int steps, double lr, std::uint64_t seed, bool with_ctc,
                 const std::string& map_out) {
    std::vector<Quad> targets;
    GeometryMap gt = fit_demo_target(&targets);

    FitDemoOptions opts;
    opts.seed = seed;
    if (with_ctc) {
        opts.ctc_classes = 5;
        opts.ctc_labels = {{1, 2, 3}, {2, 2, 4}};
    }
    FitDemoResult result = fit_maps_demo(gt, steps, lr, opts);

    double initial = result.loss_history.front();
    double final_loss = result.loss_history.back();
    double reduction = initial > 0.0 ? (initial - final_loss) / initial : 0.0;
    std::cout << "initial_loss\t" << format_double(initial) << '\n'
              << "final_loss\t" << format_double(final_loss) << '\n'
              << "reduction\t" << format_fixed(reduction) << '\n'
              << "detections\t" << result.detections.size() << '\n';

    bool ok = reduction >= 0.99;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        double best = 0.0;
        for (const OrientedBox& b : result.detections)
            best = std::max(best, quad_iou(b.quad, targets[i]));
        std::cout << "word_" << i << "_iou\t" << format_fixed(best) << '\n';
        ok = ok && best >= 0.9;
    }
    if (with_ctc) {
        for (std::size_t i = 0; i < result.logits.size(); ++i) {
            LabelSequence decoded = greedy_path(result.logits[i]);
            bool match = decoded == opts.ctc_labels[i];
            std::cout << "ctc_" << i << "_decoded\t" << (match ? "match" : "mismatch")
                      << '\n';
            ok = ok && match;
        }
    }
    if (!map_out.empty()) write_tensor(result.maps.channels, map_out);
    std::cout << (ok ? "pass" : "fail") << '\n';
    return ok ? 0 : 1;
}

int cmd_spot(const std::string& image_path, const std::string& geomap_path,
             const std::string& alphabet_path, const std::string& logits_dir,
             const std::string& oracle_gt, const std::string& crops_dir,
             const std::string& out, double threshold, double merge_iou, double final_iou,
             int height, double scale) {
    GeometryMap geo = GeometryMap::from_tensor(read_tensor(geomap_path));
    Alphabet alphabet = read_alphabet(alphabet_path);

    SpotConfig cfg;
    cfg.score_threshold = threshold;
    cfg.scale = scale;
    cfg.nms = {merge_iou, final_iou};

    require(logits_dir.empty() || oracle_gt.empty(), ErrorCode::InvalidArgument,
            "--logits-dir and --oracle-gt are mutually exclusive");

    LogitsProvider provider;
    if (!logits_dir.empty()) {
        provider = directory_logits_provider(logits_dir);
    } else if (!oracle_gt.empty()) {
        provider = oracle_logits_provider(read_annotations(oracle_gt), alphabet);
    } else {
        // No recognizer: emit blank logits so transcriptions come out empty.
        provider = [&alphabet](int, const OrientedBox&) {
            LogitMatrix m = LogitMatrix::zeros(1, alphabet.size());
            return m;
        };
    }

    std::vector<WordAnnotation> detections = run_spot(geo, provider, alphabet, cfg);
    if (!crops_dir.empty()) {
        require(!image_path.empty(), ErrorCode::InvalidArgument,
                "--crops-dir needs --image");
        Tensor image = read_tensor(image_path);
        fs::create_directories(crops_dir);
        for (std::size_t i = 0; i < detections.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "crop_%04zu.e2et", i);
            write_tensor(sample_quad(image, detections[i].quad, height),
                         fs::path(crops_dir) / name);
        }
    } else if (!image_path.empty()) {
        read_tensor(image_path);  // validate the file even when unused
    }

    write_annotations(detections, out);
    std::cout << "detections\t" << detections.size() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-language scene text spotting toolkit"};
    app.require_subcommand(1);
    int exit_code = 0;

    // decode
    auto* decode = app.add_subcommand("decode", "threshold a geometry map into boxes");
    std::string d_geomap, d_out = "-";
    double d_threshold = kDefaultScoreThreshold, d_scale = kDefaultScale;
    decode->add_option("--geomap", d_geomap, "geometry map tensor")->required();
    decode->add_option("--threshold", d_threshold, "score threshold");
    decode->add_option("--scale", d_scale, "grid-to-image scale");
    decode->add_option("--out", d_out, "output TSV ('-' for stdout)");
    decode->callback([&] { exit_code = cmd_decode(d_geomap, d_threshold, d_scale, d_out); });

    // nms
    auto* nms = app.add_subcommand("nms", "merge and suppress detection boxes");
    std::string n_boxes, n_out = "-";
    double n_merge = 0.3, n_final = 0.3;
    nms->add_option("--boxes", n_boxes, "input boxes TSV")->required();
    nms->add_option("--merge-iou", n_merge, "locality merge threshold");
    nms->add_option("--final-iou", n_final, "final suppression threshold");
    nms->add_option("--out", n_out, "output TSV ('-' for stdout)");
    nms->callback([&] { exit_code = cmd_nms(n_boxes, n_merge, n_final, n_out); });

    // crop
    auto* crop = app.add_subcommand("crop", "cut word quads into normalized strips");
    std::string c_image, c_annotations, c_out_dir;
    int c_height = kDefaultRoiHeight;
    crop->add_option("--image", c_image, "image tensor")->required();
    crop->add_option("--annotations", c_annotations, "annotation file")->required();
    crop->add_option("--height", c_height, "output strip height");
    crop->add_option("--out-dir", c_out_dir, "crop output directory")->required();
    crop->callback([&] { exit_code = cmd_crop(c_image, c_annotations, c_height, c_out_dir); });

    // ctc-decode
    auto* cdec = app.add_subcommand("ctc-decode", "greedy-decode a logit matrix");
    std::string cd_logits, cd_alphabet;
    cdec->add_option("--logits", cd_logits, "logit tensor [frames, classes]")->required();
    cdec->add_option("--alphabet", cd_alphabet, "alphabet file")->required();
    cdec->callback([&] { exit_code = cmd_ctc_decode(cd_logits, cd_alphabet); });

    // ctc-loss
    auto* closs = app.add_subcommand("ctc-loss", "alignment-free recognition loss");
    std::string cl_logits, cl_alphabet, cl_label, cl_grad_out;
    bool cl_reference = false;
    closs->add_option("--logits", cl_logits, "logit tensor [frames, classes]")->required();
    closs->add_option("--alphabet", cl_alphabet, "alphabet file")->required();
    closs->add_option("--label", cl_label, "target transcription")->required();
    closs->add_flag("--reference", cl_reference, "also print the brute-force value");
    closs->add_option("--grad-out", cl_grad_out, "write gradient tensor here");
    closs->callback([&] {
        exit_code = cmd_ctc_loss(cl_logits, cl_alphabet, cl_label, cl_reference, cl_grad_out);
    });

    // script-stats
    auto* stats = app.add_subcommand("script-stats", "script co-occurrence tables");
    std::string s_dir;
    bool s_dont_care = false;
    stats->add_option("--dir", s_dir, "annotation directory")->required();
    stats->add_flag("--include-dontcare", s_dont_care, "count don't-care regions too");
    stats->callback([&] { exit_code = cmd_script_stats(s_dir, s_dont_care); });

    // eval-e2e
    auto* e2e = app.add_subcommand("eval-e2e", "end-to-end precision/recall/F1");
    std::string e_gt, e_pred, e_mode = "exact";
    double e_iou = 0.5;
    int e_min_len = 0;
    bool e_ignore_case = false;
    e2e->add_option("--gt", e_gt, "ground-truth annotation directory")->required();
    e2e->add_option("--pred", e_pred, "prediction annotation directory")->required();
    e2e->add_option("--iou", e_iou, "overlap threshold");
    e2e->add_option("--mode", e_mode, "exact, ed1, ignore or script");
    e2e->add_option("--min-len", e_min_len, "ignore shorter ground-truth words");
    e2e->add_flag("--ignore-case", e_ignore_case, "ASCII case-insensitive matching");
    e2e->callback([&] {
        exit_code = cmd_eval_e2e(e_gt, e_pred, e_iou, e_mode, e_min_len, e_ignore_case);
    });

    // eval-ocr
    auto* ocr = app.add_subcommand("eval-ocr", "per-script recognition quality");
    std::string o_gt, o_pred;
    double o_iou = 0.5;
    ocr->add_option("--gt", o_gt, "ground-truth annotation directory")->required();
    ocr->add_option("--pred", o_pred, "prediction annotation directory")->required();
    ocr->add_option("--iou", o_iou, "overlap threshold");
    ocr->callback([&] { exit_code = cmd_eval_ocr(o_gt, o_pred, o_iou); });

    // synth
    auto* synth = app.add_subcommand("synth", "generate synthetic scenes");
    std::string sy_out, sy_alphabet_out;
    std::uint64_t sy_seed = 1;
    int sy_words = 5, sy_count = 1, sy_width = 256, sy_height = 256;
    double sy_vertical = 0.0, sy_angle_min = -0.5, sy_angle_max = 0.5;
    double sy_scale = kDefaultScale;
    synth->add_option("--out-dir", sy_out, "output directory")->required();
    synth->add_option("--seed", sy_seed, "random seed");
    synth->add_option("--words", sy_words, "words per scene");
    synth->add_option("--count", sy_count, "number of scenes");
    synth->add_option("--width", sy_width, "image width");
    synth->add_option("--height", sy_height, "image height");
    synth->add_option("--vertical-prob", sy_vertical, "probability of vertical words");
    synth->add_option("--angle-min", sy_angle_min, "minimum rotation (radians)");
    synth->add_option("--angle-max", sy_angle_max, "maximum rotation (radians)");
    synth->add_option("--scale", sy_scale, "geometry grid scale");
    synth->add_option("--alphabet-out", sy_alphabet_out, "also write the built-in alphabet");
    synth->callback([&] {
        exit_code = cmd_synth(sy_out, sy_seed, sy_words, sy_count, sy_width, sy_height,
                              sy_vertical, sy_angle_min, sy_angle_max, sy_scale,
                              sy_alphabet_out);
    });

    // gradcheck
    auto* grad = app.add_subcommand("gradcheck", "numeric check of loss gradients");
    int g_points = 100;
    std::uint64_t g_seed = 7;
    double g_h = 1e-6;
    grad->add_option("--points", g_points, "sample points per loss");
    grad->add_option("--seed", g_seed, "random seed");
    grad->add_option("--step", g_h, "finite-difference step");
    grad->callback([&] { exit_code = cmd_gradcheck(g_points, g_seed, g_h); });

    // fit-demo
    auto* fit = app.add_subcommand("fit-demo", "gradient-descent convergence demo");
    int f_steps = 2000;
    double f_lr = 0.5;
    std::uint64_t f_seed = 1;
    bool f_ctc = false;
    std::string f_map_out;
    fit->add_option("--steps", f_steps, "descent steps");
    fit->add_option("--lr", f_lr, "learning rate");
    fit->add_option("--seed", f_seed, "initialization seed");
    fit->add_flag("--with-ctc", f_ctc, "co-fit recognition logits");
    fit->add_option("--map-out", f_map_out, "write the fitted map tensor here");
    fit->callback([&] { exit_code = cmd_fit_demo(f_steps, f_lr, f_seed, f_ctc, f_map_out); });

    // spot
    auto* spot = app.add_subcommand("spot", "full detect + recognize pipeline");
    std::string sp_image, sp_geomap, sp_alphabet, sp_logits_dir, sp_oracle, sp_crops;
    std::string sp_out;
    double sp_threshold = kDefaultScoreThreshold, sp_merge = 0.3, sp_final = 0.3;
    double sp_scale = kDefaultScale;
    int sp_height = kDefaultRoiHeight;
    spot->add_option("--image", sp_image, "image tensor (needed for --crops-dir)");
    spot->add_option("--geomap", sp_geomap, "geometry map tensor")->required();
    spot->add_option("--alphabet", sp_alphabet, "alphabet file")->required();
    spot->add_option("--logits-dir", sp_logits_dir, "per-detection logit tensors");
    spot->add_option("--oracle-gt", sp_oracle, "force transcriptions from this ground truth");
    spot->add_option("--crops-dir", sp_crops, "write detection crops here");
    spot->add_option("--out", sp_out, "output annotation file")->required();
    spot->add_option("--threshold", sp_threshold, "score threshold");
    spot->add_option("--merge-iou", sp_merge, "locality merge threshold");
    spot->add_option("--final-iou", sp_final, "final suppression threshold");
    spot->add_option("--height", sp_height, "crop strip height");
    spot->add_option("--scale", sp_scale, "grid-to-image scale");
    spot->callback([&] {
        exit_code = cmd_spot(sp_image, sp_geomap, sp_alphabet, sp_logits_dir, sp_oracle,
                             sp_crops, sp_out, sp_threshold, sp_merge, sp_final, sp_height,
                             sp_scale);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad usage
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_io_error() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
