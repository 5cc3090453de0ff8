#include "swd/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "swd/error.hpp"

namespace swd {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& text, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw IoError("malformed number \"" + text + "\" in " + context);
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.precision(17);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    return in;
}

// Minimal CSV splitter; fields may be quoted with '"', quotes escaped by
// doubling.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// "# key=value" header lines shared by the CSV formats.
struct HeaderBlock {
    std::string magic;
    std::vector<std::pair<std::string, std::string>> entries;
    int lines_consumed = 0;

    std::string get(const std::string& key, const std::string& path) const {
        for (const auto& [k, v] : entries) {
            if (k == key) return v;
        }
        throw IoError("missing header field \"" + key + "\" in " + path);
    }

    std::string get_or(const std::string& key, const std::string& fallback) const {
        for (const auto& [k, v] : entries) {
            if (k == key) return v;
        }
        return fallback;
    }
};

HeaderBlock read_header(std::istream& in, const std::string& path,
                        const std::string& expected_magic, int expected_version) {
    HeaderBlock header;
    std::string line;
    if (!std::getline(in, line)) throw IoError("missing header: empty file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++header.lines_consumed;

    if (line.rfind("# " + expected_magic + "-v", 0) != 0) {
        throw IoError("missing header: expected \"# " + expected_magic + "-v" +
                      std::to_string(expected_version) + "\" at line 1 of " + path);
    }
    const std::string version_text = line.substr(expected_magic.size() + 4);
    int version = 0;
    const auto [ptr, ec] =
        std::from_chars(version_text.data(), version_text.data() + version_text.size(), version);
    if (ec != std::errc{} || version != expected_version) {
        throw IoError("unsupported format version \"" + version_text + "\" in " + path +
                      " (supported: " + std::to_string(expected_version) + ")");
    }
    header.magic = expected_magic;

    while (in.peek() == '#') {
        std::getline(in, line);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++header.lines_consumed;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(2, eq - 2);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        std::string value = line.substr(eq + 1);
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        header.entries.emplace_back(std::move(key), std::move(value));
    }
    return header;
}

std::string label_text(const std::optional<ClassLabel>& label) {
    return label ? to_string(*label) : "?";
}

std::optional<ClassLabel> parse_label_field(const std::string& text, std::size_t record,
                                            const std::string& path) {
    if (text == "?") return std::nullopt;
    const auto label = parse_label(text);
    if (!label) {
        throw IoError("unknown label \"" + text + "\" at record " + std::to_string(record) +
                      " of " + path);
    }
    return label;
}

}  // namespace

void write_corpus(std::span<const Signal> signals, const std::string& path,
                  const CorpusMeta& meta) {
    auto out = open_out(path);
    out << "# swd-corpus-v" << kCorpusFormatVersion << "\n";
    out << "# fs_hz=" << fmt_double(meta.fs) << "\n";
    out << "# duration_s=" << fmt_double(meta.duration_s) << "\n";
    out << "# n_signals=" << signals.size() << "\n";
    if (!meta.source.empty()) out << "# source=" << meta.source << "\n";
    if (!meta.config_digest.empty()) out << "# config_digest=" << meta.config_digest << "\n";
    if (!meta.produced_by.empty()) out << "# produced_by=" << meta.produced_by << "\n";
    out << "id,patient_id,channel,label,samples\n";

    std::string row;
    for (const Signal& s : signals) {
        row.clear();
        row += csv_quote(s.id);
        row += ',';
        row += csv_quote(s.patient_id);
        row += ',';
        row += csv_quote(s.channel);
        row += ',';
        row += label_text(s.label);
        row += ",\"";
        for (std::size_t i = 0; i < s.samples.size(); ++i) {
            if (i) row += ' ';
            row += fmt_double(s.samples[i]);
        }
        row += '"';
        out << row << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

CorpusFile read_corpus(const std::string& path) {
    auto in = open_in(path);
    const HeaderBlock header = read_header(in, path, "swd-corpus", kCorpusFormatVersion);

    CorpusFile file;
    file.meta.fs = parse_double(header.get("fs_hz", path), "corpus header of " + path);
    file.meta.duration_s =
        parse_double(header.get("duration_s", path), "corpus header of " + path);
    file.meta.source = header.get_or("source", "");
    file.meta.config_digest = header.get_or("config_digest", "");
    file.meta.produced_by = header.get_or("produced_by", "");
    if (file.meta.fs <= 0.0) throw IoError("inconsistent fs: non-positive fs_hz in " + path);

    std::string line;
    int line_no = header.lines_consumed;
    if (!std::getline(in, line)) throw IoError("missing column header row in " + path);
    ++line_no;

    const auto expected_samples =
        static_cast<std::size_t>(std::llround(file.meta.fs * file.meta.duration_s));

    std::size_t record = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        ++record;
        const auto fields = split_csv(line);
        if (fields.size() != 5) {
            throw IoError("truncated record at line " + std::to_string(line_no) + " of " + path +
                          ": expected 5 fields, got " + std::to_string(fields.size()));
        }

        Signal s;
        s.id = fields[0];
        s.patient_id = fields[1];
        s.channel = fields[2];
        s.label = parse_label_field(fields[3], record, path);
        s.fs = file.meta.fs;

        std::istringstream samples(fields[4]);
        std::string token;
        while (samples >> token) {
            s.samples.push_back(
                parse_double(token, "record " + std::to_string(record) + " of " + path));
        }
        if (s.samples.size() != expected_samples) {
            throw IoError("inconsistent fs/duration: record " + std::to_string(record) + " of " +
                          path + " has " + std::to_string(s.samples.size()) +
                          " samples, expected " + std::to_string(expected_samples));
        }
        file.signals.push_back(std::move(s));
    }
    return file;
}

void write_features(std::span<const FeatureVector> features, const std::string& path,
                    const FeaturesMeta& meta) {
    auto out = open_out(path);
    out << "# swd-features-v" << kFeaturesFormatVersion << "\n";
    out << "# kind=" << meta.kind << "\n";
    out << "# ma_h1=" << meta.ma.h1 << "\n";
    out << "# ma_h2=" << meta.ma.h2 << "\n";
    if (!meta.config_digest.empty()) out << "# config_digest=" << meta.config_digest << "\n";
    if (!meta.produced_by.empty()) out << "# produced_by=" << meta.produced_by << "\n";
    out << "id,label,mu,sigma\n";
    for (const FeatureVector& fv : features) {
        out << csv_quote(fv.source_id) << ',' << label_text(fv.label) << ','
            << fmt_double(fv.mu) << ',' << fmt_double(fv.sigma) << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

FeaturesFile read_features(const std::string& path) {
    auto in = open_in(path);
    const HeaderBlock header = read_header(in, path, "swd-features", kFeaturesFormatVersion);

    FeaturesFile file;
    file.meta.kind = header.get_or("kind", "residual");
    file.meta.ma.h1 = static_cast<int>(
        parse_double(header.get_or("ma_h1", "0"), "features header of " + path));
    file.meta.ma.h2 = static_cast<int>(
        parse_double(header.get_or("ma_h2", "0"), "features header of " + path));
    file.meta.config_digest = header.get_or("config_digest", "");
    file.meta.produced_by = header.get_or("produced_by", "");

    std::string line;
    int line_no = header.lines_consumed;
    if (!std::getline(in, line)) throw IoError("missing column header row in " + path);
    ++line_no;

    std::size_t record = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        ++record;
        const auto fields = split_csv(line);
        if (fields.size() != 4) {
            throw IoError("truncated record at line " + std::to_string(line_no) + " of " + path);
        }
        FeatureVector fv;
        fv.source_id = fields[0];
        fv.label = parse_label_field(fields[1], record, path);
        fv.mu = parse_double(fields[2], "record " + std::to_string(record) + " of " + path);
        fv.sigma = parse_double(fields[3], "record " + std::to_string(record) + " of " + path);
        file.features.push_back(std::move(fv));
    }
    return file;
}

namespace {

json to_json(const MaConfig& ma) {
    return json{{"h1", ma.h1}, {"h2", ma.h2}};
}

MaConfig ma_from_json(const json& j) {
    MaConfig ma;
    ma.h1 = j.at("h1").get<int>();
    ma.h2 = j.at("h2").get<int>();
    return ma;
}

json to_json(const FilterConfig& f) {
    return json{{"lowpass_enabled", f.lowpass_enabled},
                {"lowpass_cutoff_hz", f.lowpass_cutoff_hz},
                {"highpass_enabled", f.highpass_enabled},
                {"highpass_cutoff_hz", f.highpass_cutoff_hz}};
}

FilterConfig filter_from_json(const json& j) {
    FilterConfig f;
    f.lowpass_enabled = j.at("lowpass_enabled").get<bool>();
    f.lowpass_cutoff_hz = j.at("lowpass_cutoff_hz").get<double>();
    f.highpass_enabled = j.at("highpass_enabled").get<bool>();
    f.highpass_cutoff_hz = j.at("highpass_cutoff_hz").get<double>();
    return f;
}

json to_json(const TrainConfig& t) {
    return json{{"n_hidden", t.n_hidden},
                {"learning_rate", t.learning_rate},
                {"max_epochs", t.max_epochs},
                {"patience", t.patience},
                {"seed", t.seed},
                {"split", t.split},
                {"normalizer", t.normalizer == NormKind::ZScore ? "zscore" : "minmax"}};
}

TrainConfig train_from_json(const json& j) {
    TrainConfig t;
    t.n_hidden = j.at("n_hidden").get<int>();
    t.learning_rate = j.at("learning_rate").get<double>();
    t.max_epochs = j.at("max_epochs").get<int>();
    t.patience = j.at("patience").get<int>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.split = j.at("split").get<std::array<double, 3>>();
    const std::string kind = j.at("normalizer").get<std::string>();
    if (kind != "zscore" && kind != "minmax") {
        throw IoError("unknown normalizer kind \"" + kind + "\"");
    }
    t.normalizer = kind == "zscore" ? NormKind::ZScore : NormKind::MinMax;
    return t;
}

json to_json(const GenConfig& g) {
    return json{{"seed", g.seed},
                {"fs", g.fs},
                {"duration_s", g.duration_s},
                {"n_per_class", g.n_per_class},
                {"swd_rate_hz", g.swd_rate_hz},
                {"spike_amp_uv", g.spike_amp_uv},
                {"wave_amp_uv", g.wave_amp_uv},
                {"background_amp_uv", g.background_amp_uv},
                {"artifact_prob", g.artifact_prob},
                {"jitter", g.jitter}};
}

GenConfig gen_from_json(const json& j) {
    GenConfig g;
    g.seed = j.at("seed").get<std::uint64_t>();
    g.fs = j.at("fs").get<double>();
    g.duration_s = j.at("duration_s").get<double>();
    g.n_per_class = j.at("n_per_class").get<int>();
    g.swd_rate_hz = j.at("swd_rate_hz").get<double>();
    g.spike_amp_uv = j.at("spike_amp_uv").get<double>();
    g.wave_amp_uv = j.at("wave_amp_uv").get<double>();
    g.background_amp_uv = j.at("background_amp_uv").get<double>();
    g.artifact_prob = j.at("artifact_prob").get<double>();
    g.jitter = j.at("jitter").get<double>();
    return g;
}

json to_json(const Normalizer& nz) {
    return json{{"kind", nz.kind == NormKind::ZScore ? "zscore" : "minmax"},
                {"mu_mean", nz.mu_mean},
                {"mu_std", nz.mu_std},
                {"sigma_mean", nz.sigma_mean},
                {"sigma_std", nz.sigma_std}};
}

Normalizer normalizer_from_json(const json& j) {
    Normalizer nz;
    nz.kind = j.at("kind").get<std::string>() == "minmax" ? NormKind::MinMax : NormKind::ZScore;
    nz.mu_mean = j.at("mu_mean").get<double>();
    nz.mu_std = j.at("mu_std").get<double>();
    nz.sigma_mean = j.at("sigma_mean").get<double>();
    nz.sigma_std = j.at("sigma_std").get<double>();
    return nz;
}

json run_config_json(const RunConfig& config) {
    return json{{"format", "swd-config"},
                {"version", kConfigFormatVersion},
                {"ma", to_json(config.ma)},
                {"filter", to_json(config.filter)},
                {"train", to_json(config.train)},
                {"gen", to_json(config.gen)}};
}

void check_doc(const json& j, const std::string& format, int version, const std::string& path) {
    if (!j.contains("format") || j.at("format").get<std::string>() != format) {
        throw IoError("missing header: not a " + format + " document: " + path);
    }
    const int got = j.at("version").get<int>();
    if (got != version) {
        throw IoError("unsupported format version " + std::to_string(got) + " in " + path +
                      " (supported: " + std::to_string(version) + ")");
    }
}

json load_json(const std::string& path) {
    auto in = open_in(path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError("malformed JSON in " + path + ": " + e.what());
    }
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace

std::string config_digest(const RunConfig& config) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(run_config_json(config).dump())));
    return buf;
}

void write_config(const RunConfig& config, const std::string& path,
                  const std::string& produced_by) {
    json j = run_config_json(config);
    j["config_digest"] = config_digest(config);
    if (!produced_by.empty()) j["produced_by"] = produced_by;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

RunConfig read_config(const std::string& path) {
    const json j = load_json(path);
    check_doc(j, "swd-config", kConfigFormatVersion, path);
    RunConfig config;
    config.ma = ma_from_json(j.at("ma"));
    config.filter = filter_from_json(j.at("filter"));
    config.train = train_from_json(j.at("train"));
    config.gen = gen_from_json(j.at("gen"));
    return config;
}

void write_model(const ModelFile& model, const std::string& path) {
    json j{{"format", "swd-model"},
           {"version", kModelFormatVersion},
           {"n_hidden", model.net.n_hidden},
           {"w_in", model.net.w_in},
           {"b_in", model.net.b_in},
           {"w_out", model.net.w_out},
           {"b_out", model.net.b_out},
           {"normalizer", to_json(model.normalizer)},
           {"ma", to_json(model.ma)},
           {"filter", to_json(model.filter)},
           {"seed", model.seed},
           {"split", model.split},
           {"train", to_json(model.train)}};
    if (!model.config_digest.empty()) j["config_digest"] = model.config_digest;
    if (!model.produced_by.empty()) j["produced_by"] = model.produced_by;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

ModelFile read_model(const std::string& path) {
    const json j = load_json(path);
    check_doc(j, "swd-model", kModelFormatVersion, path);

    ModelFile model;
    model.net.n_hidden = j.at("n_hidden").get<int>();
    model.net.w_in = j.at("w_in").get<std::vector<double>>();
    model.net.b_in = j.at("b_in").get<std::vector<double>>();
    model.net.w_out = j.at("w_out").get<std::vector<double>>();
    model.net.b_out = j.at("b_out").get<double>();
    model.normalizer = normalizer_from_json(j.at("normalizer"));
    model.ma = ma_from_json(j.at("ma"));
    model.filter = filter_from_json(j.at("filter"));
    model.seed = j.at("seed").get<std::uint64_t>();
    model.split = j.at("split").get<std::array<double, 3>>();
    model.train = train_from_json(j.at("train"));
    model.config_digest = j.value("config_digest", "");
    model.produced_by = j.value("produced_by", "");

    const auto nh = static_cast<std::size_t>(model.net.n_hidden);
    if (model.net.w_in.size() != 2 * nh || model.net.b_in.size() != nh ||
        model.net.w_out.size() != nh) {
        throw IoError("malformed model: parameter shapes do not match n_hidden in " + path);
    }
    return model;
}

namespace {

json to_json(const ConfusionMatrix& cm) {
    return json{{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}};
}

ConfusionMatrix cm_from_json(const json& j) {
    ConfusionMatrix cm;
    cm.tp = j.at("tp").get<std::uint64_t>();
    cm.tn = j.at("tn").get<std::uint64_t>();
    cm.fp = j.at("fp").get<std::uint64_t>();
    cm.fn = j.at("fn").get<std::uint64_t>();
    return cm;
}

json rate_json(const std::optional<double>& rate) {
    if (!rate) return nullptr;
    return *rate;
}

std::optional<double> rate_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

json to_json(const MetricsReport& r) {
    return json{{"tpr", rate_json(r.tpr)},
                {"tnr", rate_json(r.tnr)},
                {"fpr", rate_json(r.fpr)},
                {"fnr", rate_json(r.fnr)},
                {"misclassification", rate_json(r.misclassification)},
                {"precision", rate_json(r.precision)},
                {"prevalence", rate_json(r.prevalence)},
                {"accuracy", rate_json(r.accuracy)}};
}

MetricsReport metrics_from_json(const json& j) {
    MetricsReport r;
    r.tpr = rate_from_json(j.at("tpr"));
    r.tnr = rate_from_json(j.at("tnr"));
    r.fpr = rate_from_json(j.at("fpr"));
    r.fnr = rate_from_json(j.at("fnr"));
    r.misclassification = rate_from_json(j.at("misclassification"));
    r.precision = rate_from_json(j.at("precision"));
    r.prevalence = rate_from_json(j.at("prevalence"));
    r.accuracy = rate_from_json(j.at("accuracy"));
    return r;
}

// Thresholds carry +/-inf endpoints, which JSON numbers cannot express;
// they are serialized as strings at full precision.
json to_json(const RocCurve& curve) {
    json points = json::array();
    for (const RocPoint& p : curve.points) {
        std::string thr;
        if (std::isinf(p.threshold)) thr = p.threshold > 0 ? "inf" : "-inf";
        else thr = fmt_double(p.threshold);
        points.push_back(json{{"fpr", p.fpr}, {"tpr", p.tpr}, {"threshold", thr}});
    }
    return json{{"auc", curve.auc}, {"points", points}};
}

RocCurve roc_from_json(const json& j) {
    RocCurve curve;
    curve.auc = j.at("auc").get<double>();
    for (const json& pj : j.at("points")) {
        RocPoint p;
        p.fpr = pj.at("fpr").get<double>();
        p.tpr = pj.at("tpr").get<double>();
        const std::string thr = pj.at("threshold").get<std::string>();
        if (thr == "inf") p.threshold = std::numeric_limits<double>::infinity();
        else if (thr == "-inf") p.threshold = -std::numeric_limits<double>::infinity();
        else p.threshold = parse_double(thr, "roc threshold");
        curve.points.push_back(p);
    }
    return curve;
}

json to_json(const Histogram& h) {
    return json{{"edges", h.edges}, {"counts", h.counts}};
}

Histogram hist_from_json(const json& j) {
    Histogram h;
    h.edges = j.at("edges").get<std::vector<double>>();
    h.counts = j.at("counts").get<std::vector<std::uint64_t>>();
    return h;
}

json to_json(const ClassStats& s) {
    return json{{"mu_mean", s.mu_mean},
                {"mu_std", s.mu_std},
                {"sigma_mean", s.sigma_mean},
                {"sigma_std", s.sigma_std},
                {"count", s.count}};
}

ClassStats class_stats_from_json(const json& j) {
    ClassStats s;
    s.mu_mean = j.at("mu_mean").get<double>();
    s.mu_std = j.at("mu_std").get<double>();
    s.sigma_mean = j.at("sigma_mean").get<double>();
    s.sigma_std = j.at("sigma_std").get<double>();
    s.count = j.at("count").get<std::size_t>();
    return s;
}

json to_json(const FeatureDiagnostics& d) {
    return json{{"stats", json{{"swd", to_json(d.stats.swd)}, {"nswd", to_json(d.stats.nswd)}}},
                {"cohens_d_mu", d.d_mu.cohens_d},
                {"p_value_mu", d.d_mu.p_value},
                {"cohens_d_sigma", d.d_sigma.cohens_d},
                {"p_value_sigma", d.d_sigma.p_value}};
}

FeatureDiagnostics diagnostics_from_json(const json& j) {
    FeatureDiagnostics d;
    d.stats.swd = class_stats_from_json(j.at("stats").at("swd"));
    d.stats.nswd = class_stats_from_json(j.at("stats").at("nswd"));
    d.d_mu = EffectSize{j.at("cohens_d_mu").get<double>(), j.at("p_value_mu").get<double>()};
    d.d_sigma =
        EffectSize{j.at("cohens_d_sigma").get<double>(), j.at("p_value_sigma").get<double>()};
    return d;
}

}  // namespace

void write_eval_report(const EvalSummary& summary, const std::string& path,
                       const std::string& config_digest, const std::string& produced_by) {
    json splits = json::array();
    for (const SplitEval& se : summary.splits) {
        splits.push_back(json{{"split", se.split},
                              {"n", se.n},
                              {"confusion", to_json(se.cm)},
                              {"rates", to_json(se.rates)},
                              {"roc", to_json(se.roc)},
                              {"error_histogram", to_json(se.error_hist)}});
    }
    json j{{"format", "swd-eval-report"},
           {"version", kReportFormatVersion},
           {"threshold", summary.threshold},
           {"splits", splits},
           {"post_ma", to_json(summary.post_ma)}};
    if (summary.pre_ma) j["pre_ma"] = to_json(*summary.pre_ma);
    if (!config_digest.empty()) j["config_digest"] = config_digest;
    if (!produced_by.empty()) j["produced_by"] = produced_by;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

EvalSummary read_eval_report(const std::string& path) {
    const json j = load_json(path);
    check_doc(j, "swd-eval-report", kReportFormatVersion, path);

    EvalSummary summary;
    summary.threshold = j.at("threshold").get<double>();
    for (const json& sj : j.at("splits")) {
        SplitEval se;
        se.split = sj.at("split").get<std::string>();
        se.n = sj.at("n").get<std::size_t>();
        se.cm = cm_from_json(sj.at("confusion"));
        se.rates = metrics_from_json(sj.at("rates"));
        se.roc = roc_from_json(sj.at("roc"));
        se.error_hist = hist_from_json(sj.at("error_histogram"));
        summary.splits.push_back(std::move(se));
    }
    summary.post_ma = diagnostics_from_json(j.at("post_ma"));
    if (j.contains("pre_ma")) summary.pre_ma = diagnostics_from_json(j.at("pre_ma"));
    return summary;
}

void write_train_report(const TrainReport& report, const std::string& path,
                        const std::string& config_digest, const std::string& produced_by) {
    json epochs = json::array();
    for (const EpochRecord& rec : report.epochs) {
        epochs.push_back(json{{"epoch", rec.epoch},
                              {"train_loss", rec.train_loss},
                              {"val_loss", rec.val_loss},
                              {"test_loss", rec.test_loss},
                              {"gradient_norm", rec.gradient_norm}});
    }
    json j{{"format", "swd-train-report"},
           {"version", kReportFormatVersion},
           {"epochs", epochs},
           {"best_epoch", report.best_epoch},
           {"stop_reason", to_string(report.stop_reason)}};
    if (!config_digest.empty()) j["config_digest"] = config_digest;
    if (!produced_by.empty()) j["produced_by"] = produced_by;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

void write_roc_csv(const RocCurve& curve, const std::string& path,
                   const std::string& config_digest, const std::string& produced_by) {
    auto out = open_out(path);
    out << "# swd-roc-v1\n";
    out << "# auc=" << fmt_double(curve.auc) << "\n";
    if (!config_digest.empty()) out << "# config_digest=" << config_digest << "\n";
    if (!produced_by.empty()) out << "# produced_by=" << produced_by << "\n";
    out << "fpr,tpr,threshold\n";
    for (const RocPoint& p : curve.points) {
        std::string thr;
        if (std::isinf(p.threshold)) thr = p.threshold > 0 ? "inf" : "-inf";
        else thr = fmt_double(p.threshold);
        out << fmt_double(p.fpr) << ',' << fmt_double(p.tpr) << ',' << thr << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_detections_csv(std::span<const Detection> detections, const std::string& path,
                          const DetectionsMeta& meta) {
    auto out = open_out(path);
    out << "# swd-detections-v1\n";
    out << "# window_s=" << fmt_double(meta.window_s) << "\n";
    out << "# hop_s=" << fmt_double(meta.hop_s) << "\n";
    out << "# threshold=" << fmt_double(meta.threshold) << "\n";
    if (!meta.config_digest.empty()) out << "# config_digest=" << meta.config_digest << "\n";
    if (!meta.produced_by.empty()) out << "# produced_by=" << meta.produced_by << "\n";
    out << "id,start_s,score,class\n";
    for (const Detection& d : detections) {
        out << csv_quote(d.id) << ',' << fmt_double(d.start_s) << ',' << fmt_double(d.score)
            << ',' << to_string(d.cls) << "\n";
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace swd
