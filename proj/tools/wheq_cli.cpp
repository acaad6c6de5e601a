// wheq: weighted histogram equalization command line tool.
//
//   wheq enhance   <input> -o <output image>   enhance one image
//   wheq curve     <input> -o <output csv>     dump the V-channel tone curve
//   wheq benchmark <dir>   -o <output csv>     EME table over a corpus

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wheq/wheq.hpp"

namespace {

struct Flags {
    std::string gamma_grid = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0";
    std::string block_size = "8x8";
    double alpha = 1e-6;
    double beta = 1.0;
    double min_segment_mass = 0.01;
    std::string channels = "sv";
    std::string upper_map = "printed";
    std::string tiles = "8x8";
    double clip = 0.01;
    std::string levels = "all";
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_real(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw wheq::Error(wheq::ErrorCode::InvalidArgument, std::string("bad ") + what + " '" + s + "'");
    }
}

std::pair<int, int> parse_dims(const std::string& s, const char* what) {
    const auto parts = split(s, 'x');
    if (parts.size() == 1) {
        const int v = static_cast<int>(parse_real(parts[0], what));
        return {v, v};
    }
    if (parts.size() != 2) {
        throw wheq::Error(wheq::ErrorCode::InvalidArgument, std::string("bad ") + what + " '" + s + "'");
    }
    return {static_cast<int>(parse_real(parts[0], what)), static_cast<int>(parse_real(parts[1], what))};
}

wheq::EnhanceConfig make_enhance_config(const Flags& f) {
    wheq::EnhanceConfig cfg;
    std::vector<double> grid;
    for (const auto& g : split(f.gamma_grid, ',')) grid.push_back(parse_real(g, "gamma"));
    cfg.gamma_grid = wheq::GammaGrid(std::move(grid));
    std::tie(cfg.eme.block_w, cfg.eme.block_h) = parse_dims(f.block_size, "block size");
    cfg.entropy.alpha = f.alpha;
    cfg.entropy.beta = f.beta;
    cfg.entropy.min_segment_mass = f.min_segment_mass;
    cfg.channels = f.channels == "v" ? wheq::ChannelPolicy::V : wheq::ChannelPolicy::SV;
    cfg.upper_map_form = f.upper_map == "symmetric" ? wheq::UpperMapForm::Symmetric : wheq::UpperMapForm::AsPrinted;
    cfg.validate();
    return cfg;
}

wheq::BenchmarkConfig make_benchmark_config(const Flags& f) {
    wheq::BenchmarkConfig cfg;
    cfg.enhance = make_enhance_config(f);
    std::tie(cfg.clahe.tiles_x, cfg.clahe.tiles_y) = parse_dims(f.tiles, "tiles");
    cfg.clahe.clip = f.clip;
    if (f.levels != "all") {
        cfg.levels = {wheq::parse_distortion_level(f.levels)};
    }
    return cfg;
}

void print_report(std::ostream& os, const wheq::EnhanceReport& report) {
    for (const auto& c : report.channels) {
        os << "channel=" << c.channel;
        if (c.fallback) {
            os << " fallback=true reason=" << c.fallback_reason;
        } else {
            os << " fallback=false t=" << *c.threshold << " omega_l=" << c.omega_l << " omega_u=" << c.omega_u
               << " x0=" << c.x0 << " gamma=" << *c.gamma;
        }
        os << " eme_before=" << c.eme_before << " eme_after=" << c.eme_after << '\n';
    }
    os << "time_ms=" << report.wall_time_ms << '\n';
}

void add_config_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--gamma-grid", f.gamma_grid, "Comma separated gamma candidates in (0, 1]");
    cmd->add_option("--block-size", f.block_size, "EME block size WxH");
    cmd->add_option("--alpha", f.alpha, "Entropy score ratio guard");
    cmd->add_option("--beta", f.beta, "Entropy score log guard (>= 1)");
    cmd->add_option("--min-segment-mass", f.min_segment_mass, "Minimum mass on each side of the threshold");
    cmd->add_option("--channels", f.channels, "Channels to enhance")->check(CLI::IsMember({"v", "sv"}));
    cmd->add_option("--upper-map", f.upper_map, "Bright segment map form")
        ->check(CLI::IsMember({"printed", "symmetric"}));
}

int run_enhance(const std::string& input, const std::string& output, const Flags& f) {
    const auto cfg = make_enhance_config(f);
    const auto img = wheq::load_image(input);
    const auto [out, report] = wheq::enhance_image(img, cfg);
    wheq::save_image(output, out);
    print_report(std::cout, report);
    return 0;
}

int run_curve(const std::string& input, const std::string& output, const Flags& f) {
    const auto cfg = make_enhance_config(f);
    const auto img = wheq::load_image(input);
    const auto [out, report] = wheq::enhance_image(img, cfg);
    const auto* v = report.find("V");
    std::ofstream os(output, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw wheq::Error(wheq::ErrorCode::IoError, "cannot open " + output + " for writing");
    }
    wheq::write_curve_csv(os, v->curve);
    if (!os.flush()) {
        throw wheq::Error(wheq::ErrorCode::IoError, "write failed for " + output);
    }
    return 0;
}

int run_benchmark(const std::string& dir, const std::string& output, const Flags& f) {
    const auto cfg = make_benchmark_config(f);
    const auto result = wheq::benchmark_corpus(dir, cfg);
    for (const auto& failure : result.failures) {
        std::cerr << "skipped " << failure << '\n';
    }
    if (result.images_ok == 0) {
        std::cerr << "error: no decodable images in " << dir << '\n';
        return 1;
    }
    std::ofstream os(output, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw wheq::Error(wheq::ErrorCode::IoError, "cannot open " + output + " for writing");
    }
    wheq::write_benchmark_csv(os, result.rows);
    if (!os.flush()) {
        throw wheq::Error(wheq::ErrorCode::IoError, "write failed for " + output);
    }
    std::cout << result.images_ok << " images, " << result.rows.size() << " rows written to " << output << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted histogram equalization with entropy threshold and EME-optimized gamma"};
    app.require_subcommand(1);

    Flags flags;
    std::string input;
    std::string output;

    auto* enhance = app.add_subcommand("enhance", "Enhance one image");
    enhance->add_option("input", input, "Input image (PNG, PPM, PGM)")->required();
    enhance->add_option("-o,--output", output, "Output image (.png, .ppm, .pgm)")->required();
    add_config_flags(enhance, flags);

    auto* curve = app.add_subcommand("curve", "Write the V-channel tone curve as CSV");
    curve->add_option("input", input, "Input image")->required();
    curve->add_option("-o,--output", output, "Output CSV")->required();
    add_config_flags(curve, flags);

    auto* bench = app.add_subcommand("benchmark", "Score original/HE/CLAHE/proposed over distortion levels");
    bench->add_option("corpus", input, "Directory of images")->required();
    bench->add_option("-o,--output", output, "Output CSV")->required();
    add_config_flags(bench, flags);
    bench->add_option("--tiles", flags.tiles, "CLAHE tile grid TXxTY");
    bench->add_option("--clip", flags.clip, "CLAHE clip limit as a fraction of tile pixels");
    bench->add_option("--levels", flags.levels, "Distortion levels to run")
        ->check(CLI::IsMember({"none", "light", "moderate", "heavy", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (enhance->parsed()) return run_enhance(input, output, flags);
        if (curve->parsed()) return run_curve(input, output, flags);
        if (bench->parsed()) return run_benchmark(input, output, flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
