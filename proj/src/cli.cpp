#include "orthopersist/cli.hpp"
#include "orthopersist/asym.hpp"
#include "orthopersist/ensemble.hpp"
#include "orthopersist/errors.hpp"
#include "orthopersist/hilbert.hpp"
#include "orthopersist/mc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace orthopersist::cli {

using nlohmann::json;

FitResult fit_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw DegenerateAbscissae();
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12 * (1.0 + sxx * n)) throw DegenerateAbscissae();
    FitResult fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y - fit.slope * x - fit.intercept;
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

std::vector<int> parse_range(const std::string& text) {
    std::vector<int> out;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        out.push_back(std::stoi(text));
        return out;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("range: expected a:b:step");
    const int a = std::stoi(text.substr(0, c1));
    const int b = std::stoi(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string step = text.substr(c2 + 1);
    if (step.empty() || a < 1 || b < a) throw std::invalid_argument("range: bad bounds");
    if (step[0] == 'x') {
        const int f = std::stoi(step.substr(1));
        if (f < 2) throw std::invalid_argument("range: geometric factor must be >= 2");
        for (long v = a; v <= b; v *= f) out.push_back(static_cast<int>(v));
    } else if (step[0] == '+') {
        const int d = std::stoi(step.substr(1));
        if (d < 1) throw std::invalid_argument("range: arithmetic step must be >= 1");
        for (long v = a; v <= b; v += d) out.push_back(static_cast<int>(v));
    } else {
        throw std::invalid_argument("range: step must be x<k> or +<k>");
    }
    if (out.empty()) throw std::invalid_argument("range: empty grid");
    return out;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Command command_from_name(const std::string& name) {
    if (name == "det") return Command::det;
    if (name == "mgf") return Command::mgf;
    if (name == "dist") return Command::dist;
    if (name == "allreal") return Command::allreal;
    if (name == "theta") return Command::theta;
    if (name == "hilbert") return Command::hilbert;
    if (name == "mc") return Command::mc;
    if (name == "walk") return Command::walk;
    if (name == "kac") return Command::kac;
    if (name == "sweep") return Command::sweep;
    throw std::invalid_argument("unknown command: " + name);
}

std::string command_name(Command c) {
    switch (c) {
        case Command::det: return "det";
        case Command::mgf: return "mgf";
        case Command::dist: return "dist";
        case Command::allreal: return "allreal";
        case Command::theta: return "theta";
        case Command::hilbert: return "hilbert";
        case Command::mc: return "mc";
        case Command::walk: return "walk";
        case Command::kac: return "kac";
        case Command::sweep: return "sweep";
    }
    return "det";
}

struct Table {
    std::string header;                         // comma-joined column names
    std::vector<std::vector<std::string>> rows; // formatted cells
    bool has_fit = false;
    FitResult fit;
};

// Grid points are independent; run them on the worker pool and keep the
// output order (rows stay sorted by the grid key).
template <typename Fn>
std::vector<std::vector<std::vector<std::string>>> map_grid(const std::vector<int>& grid, Fn fn) {
    std::vector<std::vector<std::vector<std::string>>> blocks(grid.size());
    const int workers = std::min<int>(mc::thread_count(), static_cast<int>(grid.size()));
    if (workers <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) blocks[i] = fn(grid[i]);
        return blocks;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                blocks[i] = fn(grid[i]);
        });
    }
    for (auto& t : pool) t.join();
    return blocks;
}

void append_blocks(Table& t, std::vector<std::vector<std::vector<std::string>>>&& blocks) {
    for (auto& block : blocks)
        for (auto& row : block) t.rows.push_back(std::move(row));
}

Table run_command(Command cmd, const RunConfig& cfg);

Table run_sweep(const RunConfig& cfg) {
    const Command sub = command_from_name(cfg.sweep_command);
    if (sub == Command::sweep || sub == Command::theta || sub == Command::hilbert)
        throw std::invalid_argument("sweep: unsupported inner command");
    Table t = run_command(sub, cfg);
    if (cfg.fit) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& row : t.rows) {
            const double n = std::stod(row[0]);
            const double v = std::stod(row.back());
            if (sub == Command::allreal)
                pts.emplace_back(std::log(n), v);
            else
                pts.emplace_back(std::log(n), std::log(v));
        }
        t.fit = fit_slope(pts);
        t.has_fit = true;
    }
    return t;
}

Table run_command(Command cmd, const RunConfig& cfg) {
    Table t;
    switch (cmd) {
        case Command::det: {
            t.header = "n,ell,p_no_real";
            append_blocks(t, map_grid(cfg.n_values, [&](int n) {
                              const double p = ensemble::p_no_real({n, cfg.ell});
                              return std::vector<std::vector<std::string>>{
                                  {std::to_string(n), std::to_string(cfg.ell), fmt17(p)}};
                          }));
            break;
        }
        case Command::mgf: {
            t.header = "n,ell,s,mgf";
            append_blocks(t, map_grid(cfg.n_values, [&](int n) {
                              const double v = ensemble::mgf({n, cfg.ell}, cfg.s);
                              return std::vector<std::vector<std::string>>{
                                  {std::to_string(n), std::to_string(cfg.ell), fmt17(cfg.s),
                                   fmt17(v)}};
                          }));
            break;
        }
        case Command::dist: {
            t.header = "n,ell,k,prob,stderr";
            append_blocks(t, map_grid(cfg.n_values, [&](int n) {
                              const auto dist = ensemble::real_count_distribution({n, cfg.ell});
                              std::vector<std::vector<std::string>> rows;
                              for (int k = 0; k <= n; ++k)
                                  rows.push_back({std::to_string(n), std::to_string(cfg.ell),
                                                  std::to_string(k), fmt17(dist.probs[k]),
                                                  fmt17(0.0)});
                              return rows;
                          }));
            break;
        }
        case Command::allreal: {
            t.header = "n,ell,log_p_all_real";
            append_blocks(t, map_grid(cfg.n_values, [&](int n) {
                              const double v = ensemble::log_p_all_real({n, cfg.ell});
                              return std::vector<std::vector<std::string>>{
                                  {std::to_string(n), std::to_string(cfg.ell), fmt17(v)}};
                          }));
            break;
        }
        case Command::theta: {
            t.header = "ell,theta";
            const double v = cfg.ell == 1 ? asym::theta().value : asym::theta_ell(cfg.ell).value;
            t.rows.push_back({std::to_string(cfg.ell), fmt17(v)});
            break;
        }
        case Command::hilbert: {
            t.header = "x,l,hatP";
            for (int l : cfg.l_values)
                t.rows.push_back({fmt17(cfg.x), std::to_string(l), fmt17(hilbert::hatP_eval(l, cfg.x))});
            break;
        }
        case Command::mc: {
            if (cfg.mc_dist) {
                t.header = "n,ell,k,prob,stderr";
                for (int n : cfg.n_values) {
                    const auto bins =
                        mc::estimate_distribution({n, cfg.ell}, cfg.samples, cfg.seed);
                    for (size_t k = 0; k < bins.size(); ++k)
                        t.rows.push_back({std::to_string(n), std::to_string(cfg.ell),
                                          std::to_string(k), fmt17(bins[k].mean),
                                          fmt17(bins[k].stderr_)});
                }
            } else {
                t.header = "n,ell,estimate,stderr,samples,seed";
                for (int n : cfg.n_values) {
                    const auto est = mc::estimate_p_no_real({n, cfg.ell}, cfg.samples, cfg.seed);
                    t.rows.push_back({std::to_string(n), std::to_string(cfg.ell), fmt17(est.mean),
                                      fmt17(est.stderr_), std::to_string(est.samples),
                                      std::to_string(est.seed)});
                }
            }
            break;
        }
        case Command::walk: {
            t.header = "n,ell,estimate,stderr,samples,seed";
            mc::WalkConfig wc{cfg.ell, cfg.samples, cfg.bandwidth};
            const auto est = mc::walk_theta(wc, cfg.seed);
            t.rows.push_back({"0", std::to_string(cfg.ell), fmt17(est.mean), fmt17(est.stderr_),
                              std::to_string(est.samples), std::to_string(est.seed)});
            break;
        }
        case Command::kac: {
            t.header = "n,ell,estimate,stderr,samples,seed";
            for (int N : cfg.n_values) {
                const auto est = cfg.kac_persistence
                                     ? mc::estimate_kac_persistence(N, cfg.samples, cfg.seed)
                                     : mc::estimate_kac_real_roots(N, cfg.samples, cfg.seed);
                t.rows.push_back({std::to_string(N), "0", fmt17(est.mean), fmt17(est.stderr_),
                                  std::to_string(est.samples), std::to_string(est.seed)});
            }
            break;
        }
        case Command::sweep:
            return run_sweep(cfg);
    }
    return t;
}

void write_csv(const Table& t, std::ostream& out) {
    out << t.header << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            out << row[i];
        }
        out << "\n";
    }
    if (t.has_fit) {
        out << "# fit: slope=" << fmt17(t.fit.slope) << " intercept=" << fmt17(t.fit.intercept)
            << " residual=" << fmt17(t.fit.residual) << "\n";
    }
}

json config_meta(const RunConfig& c) {
    json meta;
    meta["command"] = command_name(c.command);
    meta["n"] = c.n_values;
    meta["ell"] = c.ell;
    meta["s"] = c.s;
    meta["alpha"] = c.alpha;
    meta["samples"] = c.samples;
    meta["seed"] = c.seed;
    meta["out"] = c.out_path;
    meta["format"] = c.format == Format::csv ? "csv" : "json";
    meta["fit"] = c.fit;
    meta["mc_dist"] = c.mc_dist;
    meta["kac_persistence"] = c.kac_persistence;
    meta["x"] = c.x;
    meta["l"] = c.l_values;
    meta["bandwidth"] = c.bandwidth;
    meta["sweep_command"] = c.sweep_command;
    return meta;
}

void write_json(const Table& t, const RunConfig& cfg, std::ostream& out) {
    json doc;
    doc["meta"] = config_meta(cfg);
    std::vector<std::string> cols;
    std::stringstream hs(t.header);
    std::string col;
    while (std::getline(hs, col, ',')) cols.push_back(col);
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r;
        for (size_t i = 0; i < row.size() && i < cols.size(); ++i) r[cols[i]] = row[i];
        rows.push_back(r);
    }
    doc["rows"] = rows;
    if (t.has_fit) {
        doc["fit"] = {{"slope", t.fit.slope},
                      {"intercept", t.fit.intercept},
                      {"residual", t.fit.residual}};
    }
    out << doc.dump(2) << "\n";
}

} // namespace

RunConfig config_from_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    RunConfig c;
    if (j.contains("command")) c.command = command_from_name(j["command"].get<std::string>());
    if (j.contains("n")) {
        if (j["n"].is_string())
            c.n_values = parse_range(j["n"].get<std::string>());
        else if (j["n"].is_array())
            c.n_values = j["n"].get<std::vector<int>>();
        else
            c.n_values = {j["n"].get<int>()};
    }
    if (j.contains("ell")) c.ell = j["ell"].get<int>();
    if (j.contains("s")) c.s = j["s"].get<double>();
    if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
    if (j.contains("samples")) c.samples = j["samples"].get<long>();
    if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
    if (j.contains("out")) c.out_path = j["out"].get<std::string>();
    if (j.contains("format")) c.format = j["format"] == "json" ? Format::json : Format::csv;
    if (j.contains("fit")) c.fit = j["fit"].get<bool>();
    if (j.contains("mc_dist")) c.mc_dist = j["mc_dist"].get<bool>();
    if (j.contains("kac_persistence")) c.kac_persistence = j["kac_persistence"].get<bool>();
    if (j.contains("x")) c.x = j["x"].get<double>();
    if (j.contains("l")) {
        if (j["l"].is_string())
            c.l_values = parse_range(j["l"].get<std::string>());
        else if (j["l"].is_array())
            c.l_values = j["l"].get<std::vector<int>>();
        else
            c.l_values = {j["l"].get<int>()};
    }
    if (j.contains("bandwidth")) c.bandwidth = j["bandwidth"].get<double>();
    if (j.contains("sweep_command")) c.sweep_command = j["sweep_command"].get<std::string>();
    return c;
}

std::string config_to_json(const RunConfig& config) { return config_meta(config).dump(2); }

int run(const RunConfig& config, std::ostream& out) {
    const Table t = run_command(config.command, config);
    if (config.format == Format::csv)
        write_csv(t, out);
    else
        write_json(t, config, out);
    return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"persistence probabilities and real-eigenvalue statistics of truncated "
                 "Haar-orthogonal matrices"};
    app.require_subcommand(1);

    std::string n_text, l_text, format_text, config_path, out_path, sweep_cmd;
    RunConfig cfg;

    static const std::vector<std::string> names = {"det",   "mgf",  "dist", "allreal", "theta",
                                                   "hilbert", "mc", "walk", "kac",     "sweep"};
    std::vector<CLI::App*> subs;
    for (const auto& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--n", n_text, "n value or range a:b:x2 / a:b:+k");
        sub->add_option("--ell", cfg.ell, "truncation rank");
        sub->add_option("--s", cfg.s, "MGF argument");
        sub->add_option("--alpha", cfg.alpha, "aspect ratio");
        sub->add_option("--samples", cfg.samples, "Monte Carlo samples");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--format", format_text, "csv or json");
        sub->add_flag("--fit", cfg.fit, "append least-squares slope (sweep)");
        sub->add_option("--config", config_path, "JSON config file; flags win");
        sub->add_flag("--dist", cfg.mc_dist, "mc: full histogram");
        sub->add_flag("--persistence", cfg.kac_persistence, "kac: no-real-root fraction");
        sub->add_option("--x", cfg.x, "hilbert: evaluation point");
        sub->add_option("--l", l_text, "hilbert: degree or range");
        sub->add_option("--bandwidth", cfg.bandwidth, "walk: kernel bandwidth");
        sub->add_option("--command", sweep_cmd, "sweep: inner command");
        subs.push_back(sub);
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 64;
    }

    try {
        CLI::App* active = nullptr;
        for (size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) active = subs[i];
        if (active == nullptr) {
            err << "no subcommand given\n";
            return 64;
        }

        RunConfig final_cfg;
        if (active->count("--config")) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            final_cfg = config_from_json(ss.str());
        }
        final_cfg.command = command_from_name(active->get_name());
        if (active->count("--n")) final_cfg.n_values = parse_range(n_text);
        if (active->count("--ell")) final_cfg.ell = cfg.ell;
        if (active->count("--s")) final_cfg.s = cfg.s;
        if (active->count("--alpha")) final_cfg.alpha = cfg.alpha;
        if (active->count("--samples")) final_cfg.samples = cfg.samples;
        if (active->count("--seed")) final_cfg.seed = cfg.seed;
        if (active->count("--out")) final_cfg.out_path = out_path;
        if (active->count("--format")) {
            if (format_text == "json")
                final_cfg.format = Format::json;
            else if (format_text == "csv")
                final_cfg.format = Format::csv;
            else
                throw std::invalid_argument("format must be csv or json");
        }
        if (active->count("--fit")) final_cfg.fit = cfg.fit;
        if (active->count("--dist")) final_cfg.mc_dist = cfg.mc_dist;
        if (active->count("--persistence")) final_cfg.kac_persistence = cfg.kac_persistence;
        if (active->count("--x")) final_cfg.x = cfg.x;
        if (active->count("--l")) final_cfg.l_values = parse_range(l_text);
        if (active->count("--bandwidth")) final_cfg.bandwidth = cfg.bandwidth;
        if (active->count("--command")) final_cfg.sweep_command = sweep_cmd;

        if (!final_cfg.out_path.empty()) {
            std::ofstream f(final_cfg.out_path);
            if (!f) throw std::invalid_argument("cannot open output file: " + final_cfg.out_path);
            return run(final_cfg, f);
        }
        return run(final_cfg, out);
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace orthopersist::cli
