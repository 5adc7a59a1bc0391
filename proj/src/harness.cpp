#include "annealsig/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "annealsig/embedding.hpp"
#include "annealsig/entanglement.hpp"
#include "annealsig/errors.hpp"
#include "annealsig/perturbation.hpp"
#include "annealsig/quantum.hpp"
#include "annealsig/scl.hpp"
#include "annealsig/svg.hpp"

namespace fs = std::filesystem;

namespace annealsig {

std::vector<Gauge> random_gauges(int n, int count, std::uint64_t seed) {
    if (n < 1 || count < 0) throw RangeError("bad gauge request");
    std::mt19937_64 rng(seed);
    std::vector<Gauge> out;
    for (int k = 0; k < count; ++k) {
        Gauge g;
        for (int j = 0; j < n; ++j)
            if (rng() >> 63) g.push_back(j);
        out.push_back(std::move(g));
    }
    return out;
}

Gauge complement(const Gauge& g, int n) {
    Gauge out;
    for (int j = 0; j < n; ++j)
        if (std::find(g.begin(), g.end(), j) == g.end()) out.push_back(j);
    return out;
}

GroundSpace gauge_labels(const GroundSpace& base, const Gauge& g, int n) {
    const State m = flip_mask(g, n);
    GroundSpace out = base;
    auto map = [m](std::vector<State>& v) {
        for (auto& x : v) x ^= m;
        std::sort(v.begin(), v.end());
    };
    map(out.states);
    map(out.isolated);
    map(out.cluster);
    for (auto& c : out.components) map(c);
    return out;
}

GaugeSweep gauge_averaged_sweep(const IsingModel& model, const std::vector<Gauge>& gauges, const GaugeEngine& engine) {
    if (gauges.empty()) throw RangeError("gauge list is empty");
    const int n = model.n();
    const GroundSpace base = ground_space(model);
    GaugeSweep sweep;
    sweep.records.resize(gauges.size());
    parallel_for(static_cast<int>(gauges.size()), [&](int k) {
        GaugeRecord& r = sweep.records[k];
        r.flips = gauges[k];
        Gauge partner = complement(gauges[k], n);
        r.direct = cluster_stats(engine(apply_gauge(model, r.flips)), gauge_labels(base, r.flips, n));
        r.inverted = cluster_stats(engine(apply_gauge(model, partner)), gauge_labels(base, partner, n));
        r.paired_p_s = 0.5 * (r.direct.p_s + r.inverted.p_s);
        r.paired_p_C = 0.5 * (r.direct.p_C + r.inverted.p_C);
    });
    std::vector<double> ps, pc;
    for (const auto& r : sweep.records) {
        ps.push_back(r.paired_p_s);
        pc.push_back(r.paired_p_C);
    }
    sweep.paired_p_s = box_stats(ps);
    sweep.paired_p_C = box_stats(pc);
    return sweep;
}

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    int n = std::max(1, hw);
    if (const char* env = std::getenv("ANNEAL_SIG_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) n = v;
    }
    return n;
}

void parallel_for(int count, const std::function<void(int)>& job) {
    const int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int k = 0; k < count; ++k) job(k);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int k; (k = next.fetch_add(1)) < count;) {
                try {
                    job(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

BathSpec bath_from_json(const json& j) {
    BathSpec b = default_bath();
    if (j.is_null()) return b;
    if (!j.is_object()) throw SpecError("bath must be an object");
    if (j.contains("beta")) b.beta = j.at("beta").get<double>();
    if (j.contains("temp_GHz")) b.beta = beta_from_temp_ghz(j.at("temp_GHz").get<double>());
    b.eta_g2 = eta_for_decoherence(150.0, b.beta);
    if (j.contains("eta_g2")) b.eta_g2 = j.at("eta_g2").get<double>();
    if (j.contains("decoherence_ns")) b.eta_g2 = eta_for_decoherence(j.at("decoherence_ns").get<double>(), b.beta);
    if (j.contains("omega_c")) b.omega_c = j.at("omega_c").get<double>();
    if (!(b.beta > 0) || !(b.eta_g2 >= 0) || !(b.omega_c > 0)) throw RangeError("bath parameters out of range");
    return b;
}

AnnealScheduleQ schedule_from_json(const json& j, double total_ns, const std::string& base_dir) {
    if (j.is_null()) return AnnealScheduleQ::linear(total_ns);
    if (j.contains("file")) return AnnealScheduleQ::from_csv(total_ns, (fs::path(base_dir) / j.at("file").get<std::string>()).string());
    std::string kind = j.value("kind", "linear");
    if (kind != "linear") throw SpecError("schedule kind must be linear or a file");
    return AnnealScheduleQ::linear(total_ns, j.value("A0_GHz", 10.0), j.value("B0_GHz", 5.3));
}

namespace {

std::vector<double> as_list(const json& j, double fallback) {
    if (j.is_null()) return {fallback};
    if (j.is_number()) return {j.get<double>()};
    if (!j.is_array() || j.empty()) throw SpecError("sweep axis must be a number or a non-empty list");
    return j.get<std::vector<double>>();
}

std::vector<std::string> as_strings(const json& j, const std::string& fallback) {
    if (j.is_null()) return {fallback};
    if (j.is_string()) return {j.get<std::string>()};
    if (!j.is_array() || j.empty()) throw SpecError("sweep axis must be a string or a non-empty list");
    return j.get<std::vector<std::string>>();
}

// Rethrow with the sweep coordinate attached, keeping the error family for exit codes.
template <class F>
auto at_axis(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const SpecError& e) {
        throw SpecError(std::string(e.what()) + " [" + where + "]");
    } catch (const NumericalError& e) {
        throw NumericalError(std::string(e.what()) + " [" + where + "]");
    }
}

std::string gauge_string(const Gauge& g) {
    std::string s;
    for (std::size_t k = 0; k < g.size(); ++k) s += (k ? " " : "") + std::to_string(g[k]);
    return s;
}

std::vector<Gauge> gauges_from_json(const json& j, int n, std::uint64_t seed) {
    std::vector<Gauge> out;
    if (j.is_null()) return out;
    if (j.is_array()) {
        for (const auto& g : j) out.push_back(g.get<Gauge>());
    } else {
        if (j.value("identity", true)) out.push_back({});
        auto r = random_gauges(n, j.value("random", 0), j.value("seed", seed));
        out.insert(out.end(), r.begin(), r.end());
    }
    for (const auto& g : out)
        for (int s : g)
            if (s < 0 || s >= n) throw RangeError("gauge spin out of range");
    return out;
}

struct Writer {
    fs::path dir;
    RunResult* res;
    void put(const std::string& name, const std::string& text) {
        write_text((dir / name).string(), text);
        res->files.push_back(name);
    }
};

std::string label(double v) {
    std::string s = fmt_double(v);
    std::replace(s.begin(), s.end(), '.', 'p');
    std::replace(s.begin(), s.end(), '+', '_');
    return s;
}

std::string wcl_csv(const std::vector<WclPoint>& tr) {
    std::ostringstream os;
    os << "t_ns,p_s,p_C\n";
    for (const auto& p : tr) os << fmt_double(p.t) << ',' << fmt_double(p.p_s) << ',' << fmt_double(p.p_C) << '\n';
    return os.str();
}

std::string diag_csv(const Distribution& p) {
    std::ostringstream os;
    os << "state,probability\n";
    for (Eigen::Index x = 0; x < p.size(); ++x) os << x << ',' << fmt_double(p[x]) << '\n';
    return os.str();
}

std::string gauge_csv(const GaugeSweep& s) {
    std::ostringstream os;
    os << "gauge,flips,p_s,p_C,p_s_inverted,p_C_inverted,p_s_paired,p_C_paired\n";
    for (std::size_t k = 0; k < s.records.size(); ++k) {
        const auto& r = s.records[k];
        os << k << ',' << gauge_string(r.flips) << ',' << fmt_double(r.direct.p_s) << ',' << fmt_double(r.direct.p_C)
           << ',' << fmt_double(r.inverted.p_s) << ',' << fmt_double(r.inverted.p_C) << ','
           << fmt_double(r.paired_p_s) << ',' << fmt_double(r.paired_p_C) << '\n';
    }
    return os.str();
}

json box_json(const BoxStats& b) {
    return {{"median", b.median},           {"lower_quartile", b.lower_quartile},
            {"upper_quartile", b.upper_quartile}, {"whisker_low", b.whisker_low},
            {"whisker_high", b.whisker_high}, {"outliers", b.outliers}};
}

// One axis value of a gauge-capable engine.
struct AxisPoint {
    std::string tag;
    GaugeEngine engine;
};

void gauge_block(const IsingModel& model, const std::vector<Gauge>& gauges, const std::vector<AxisPoint>& points,
                 const std::string& axis_name, const std::vector<double>& axis, Writer& w, json& results) {
    if (gauges.empty()) return;
    std::vector<BoxStats> boxes;
    std::vector<std::string> labels;
    json summary = json::array();
    for (std::size_t k = 0; k < points.size(); ++k) {
        GaugeSweep s = at_axis(points[k].tag, [&] { return gauge_averaged_sweep(model, gauges, points[k].engine); });
        w.put("gauges_" + points[k].tag + ".csv", gauge_csv(s));
        boxes.push_back(s.paired_p_s);
        labels.push_back(fmt_double(axis[k]));
        summary.push_back({{axis_name, axis[k]}, {"paired_p_s", box_json(s.paired_p_s)},
                           {"paired_p_C", box_json(s.paired_p_C)}});
    }
    results["gauge_sweep"] = summary;
    std::ostringstream os;
    os << axis_name << ",median,lower_quartile,upper_quartile,whisker_low,whisker_high,n_outliers\n";
    for (std::size_t k = 0; k < boxes.size(); ++k)
        os << fmt_double(axis[k]) << ',' << fmt_double(boxes[k].median) << ',' << fmt_double(boxes[k].lower_quartile)
           << ',' << fmt_double(boxes[k].upper_quartile) << ',' << fmt_double(boxes[k].whisker_low) << ','
           << fmt_double(boxes[k].whisker_high) << ',' << boxes[k].outliers.size() << '\n';
    w.put("box_p_s.csv", os.str());
    PlotSpec ps{"paired p_s over gauges", axis_name, "p_s"};
    w.put("box_p_s.svg", box_plot_svg(ps, labels, boxes));
}

}  // namespace

RunResult run(const json& spec, const std::string& outdir, const std::string& base_dir) {
    if (!spec.is_object() || !spec.contains("engine")) throw SpecError("run spec needs an engine");
    const std::string engine = spec.at("engine").get<std::string>();
    RunResult res;
    fs::create_directories(outdir);
    Writer w{fs::path(outdir), &res};
    json results = json::object();

    IsingModel model = build_reference_model();
    if (spec.contains("model_file")) {
        fs::path p = fs::path(base_dir) / spec.at("model_file").get<std::string>();
        if (!fs::exists(p)) throw SpecError("model file not found: " + p.string());
        model = load_model(p.string());
    }
    const double delta = spec.value("perturb_delta", 0.0);
    const std::uint64_t seed = spec.value("seed", std::uint64_t{1});
    const auto gauges = gauges_from_json(spec.value("gauges", json()), model.n(), seed);
    const GroundSpace base = model.n() <= 14 ? ground_space(model) : GroundSpace{};
    const bool has_labels = !base.isolated.empty();
    auto engine_model = [&](const IsingModel& m) { return delta > 0 ? perturb_isolated(m, delta) : m; };

    if (engine == "spectrum") {
        SpectrumTable t = full_spectrum(model);
        w.put("spectrum.csv", spectrum_csv(t));
        results["ground_energy"] = t.levels.front().energy;
        results["ground_degeneracy"] = t.levels.front().states.size();
        if (spec.contains("instantaneous")) {
            const json& q = spec.at("instantaneous");
            const int levels = q.value("levels", 7), points = q.value("points", 71);
            const double from = q.value("from", 0.3);
            const double T = q.value("T_ns", 100.0);
            AnnealScheduleQ sched = schedule_from_json(spec.value("schedule", json()), T, base_dir);
            std::ostringstream os;
            os << "t_fraction";
            for (int k = 0; k < levels; ++k) os << ",E" << k << "_GHz";
            os << ",isolated_level\n";
            std::vector<Series> series(levels);
            for (int k = 0; k < levels; ++k) series[k].label = "E" + std::to_string(k);
            for (int p = 0; p < points; ++p) {
                double f = from + (1.0 - from) * p / std::max(1, points - 1);
                auto sp = instantaneous_spectrum(model, sched, f * T, levels);
                int iso = -1;
                if (has_labels) {
                    Eigen::Index best;
                    sp.basis.row(static_cast<Eigen::Index>(base.isolated.front())).cwiseAbs2().maxCoeff(&best);
                    iso = static_cast<int>(best);
                }
                os << fmt_double(f);
                for (int k = 0; k < levels; ++k) {
                    os << ',' << fmt_double(sp.energies[k] / kTwoPi);
                    series[k].x.push_back(f);
                    series[k].y.push_back(sp.energies[k] / kTwoPi);
                }
                os << ',' << iso << '\n';
            }
            w.put("instantaneous_spectrum.csv", os.str());
            w.put("instantaneous_spectrum.svg",
                  line_plot_svg({"lowest levels of H(t)", "t/T", "E (GHz)"}, series));
        }
    } else if (engine == "embeddings") {
        auto emb = enumerate_embeddings(model);
        std::ostringstream os;
        os << "index";
        for (int k = 0; k < kUnitCellSize; ++k) os << ",v" << k;
        os << '\n';
        for (std::size_t k = 0; k < emb.size(); ++k) {
            os << k;
            for (int v : emb[k].vertex) os << ',' << v;
            os << '\n';
        }
        w.put("embeddings.csv", os.str());
        results["count"] = emb.size();
        results["assignments"] = enumerate_assignments(model).size();
    } else if (engine == "sa-master" || engine == "sa-mc") {
        const json sa = spec.value("sa", json::object());
        auto rules = as_strings(sa.value("rules", json()), "metropolis");
        auto kinds = as_strings(sa.value("schedules", json()), "exponential");
        auto ntots = as_list(sa.value("n_tot", json()), 10000);
        MasterOptions mo;
        mo.dt = sa.value("dt", 0.01);
        mo.steps_per_temp = sa.value("steps_per_temp", 1);
        mo.record_every = sa.value("record_every", 100L);
        const long reads = sa.value("reads", 1000L);
        std::vector<std::uint64_t> seeds = sa.value("seeds", std::vector<std::uint64_t>{seed});
        json rows = json::array();
        for (const auto& rn : rules)
            for (const auto& kn : kinds) {
                UpdateRule rule{parse_rule_kind(rn), sa.value("attempt_scale", 1.0)};
                std::vector<AxisPoint> points;
                for (double nt : ntots) {
                    TemperatureSchedule ts{parse_schedule_kind(kn), sa.value("T_i", 10.0), sa.value("T_f", 0.35),
                                           static_cast<long>(nt)};
                    ts.validate();
                    const std::string tag = rn + "_" + kn + "_n" + std::to_string(ts.n_tot);
                    if (engine == "sa-master") {
                        MasterRun r = at_axis(tag, [&] { return anneal_master(engine_model(model), rule, ts, mo); });
                        w.put("sa_" + tag + ".csv", trajectory_csv(r.trajectory));
                        json row = {{"rule", rn}, {"schedule", kn}, {"n_tot", ts.n_tot}};
                        if (has_labels) {
                            auto c = cluster_stats(r.final, base);
                            row["p_s"] = c.p_s;
                            row["p_C"] = c.p_C;
                        }
                        rows.push_back(row);
                        points.push_back({tag, [=](const IsingModel& m) {
                                              return anneal_master(engine_model(m), rule, ts, mo).final;
                                          }});
                    } else {
                        for (auto sd : seeds) {
                            McRun r = at_axis(tag, [&] { return anneal_mc(engine_model(model), rule, ts, reads, sd); });
                            w.put("mc_" + tag + "_seed" + std::to_string(sd) + ".csv", diag_csv(r.empirical));
                            json row = {{"rule", rn}, {"schedule", kn}, {"n_tot", ts.n_tot}, {"seed", sd}, {"reads", reads}};
                            if (has_labels) {
                                auto c = cluster_stats(r.empirical, base);
                                row["p_s"] = c.p_s;
                                row["p_C"] = c.p_C;
                            }
                            rows.push_back(row);
                        }
                        const auto sd0 = seeds.front();
                        points.push_back({tag, [=](const IsingModel& m) {
                                              return anneal_mc(engine_model(m), rule, ts, reads, sd0).empirical;
                                          }});
                    }
                }
                if (has_labels) gauge_block(model, gauges, points, "n_tot", ntots, w, results);
            }
        results["runs"] = rows;
    } else if (engine == "qa-closed" || engine == "qa-wcl" || engine == "qa-scl") {
        auto Ts = as_list(spec.value("T_ns", json()), engine == "qa-wcl" ? 1e4 : 100.0);
        const BathSpec bath = bath_from_json(spec.value("bath", json()));
        const json sched_j = spec.value("schedule", json());
        const bool dump = spec.value("dump_diagonal", false);
        json rows = json::array();
        std::vector<AxisPoint> points;
        std::vector<Series> series;
        for (double T : Ts) {
            AnnealScheduleQ sched = schedule_from_json(sched_j, T, base_dir);
            const std::string tag = engine.substr(3) + "_T" + label(T);
            GaugeEngine eng;
            std::vector<WclPoint> traj;
            if (engine == "qa-closed") {
                ClosedOptions o;
                o.n_steps = spec.value("steps", o.n_steps);
                o.samples = spec.value("samples", 0);
                eng = [=](const IsingModel& m) { return evolve_closed(engine_model(m), sched, o).populations; };
                ClosedResult r = at_axis(tag, [&] { return evolve_closed(engine_model(model), sched, o); });
                for (std::size_t k = 0; k < r.times.size(); ++k) {
                    WclPoint p{r.times[k], std::nan(""), std::nan("")};
                    if (has_labels) {
                        auto c = cluster_stats(Distribution(r.states[k].cwiseAbs2()), base);
                        p.p_s = c.p_s;
                        p.p_C = c.p_C;
                    }
                    traj.push_back(p);
                }
                if (dump) w.put("diag_" + tag + ".csv", diag_csv(r.populations));
            } else if (engine == "qa-wcl") {
                WclOptions o;
                o.n_steps = spec.value("steps", o.n_steps);
                o.coupling = parse_coupling(spec.value("coupling", std::string("sigma_z")));
                o.window = spec.value("window", o.window);
                o.record_every = spec.value("record_every", 1);
                if (has_labels) o.labels = base;
                eng = [=](const IsingModel& m) {
                    WclOptions g = o;
                    g.labels.reset();
                    g.record_every = g.n_steps;
                    return evolve_wcl(engine_model(m), sched, bath, g).populations;
                };
                WclResult r = at_axis(tag, [&] { return evolve_wcl(engine_model(model), sched, bath, o); });
                traj = r.trajectory;
                if (dump) w.put("diag_" + tag + ".csv", diag_csv(r.populations));
            } else {
                SclOptions o;
                o.n_steps = spec.value("steps", o.n_steps);
                o.coupling = parse_scl_coupling(spec.value("coupling", std::string("per_qubit")));
                o.record_every = spec.value("record_every", o.record_every);
                if (has_labels) o.labels = base;
                eng = [=](const IsingModel& m) {
                    SclOptions g = o;
                    g.labels.reset();
                    g.record_every = g.n_steps;
                    return evolve_scl(engine_model(m), sched, bath, g).populations;
                };
                SclResult r = at_axis(tag, [&] { return evolve_scl(engine_model(model), sched, bath, o); });
                traj = r.trajectory;
                if (dump) w.put("diag_" + tag + ".csv", diag_csv(r.populations));
            }
            w.put("traj_" + tag + ".csv", wcl_csv(traj));
            json row = {{"T_ns", T}};
            if (has_labels && !traj.empty()) {
                row["p_s"] = traj.back().p_s;
                row["p_C"] = traj.back().p_C;
                Series s{"p_s T=" + fmt_double(T), {}, {}};
                for (const auto& p : traj) {
                    s.x.push_back(p.t / T);
                    s.y.push_back(p.p_s);
                }
                series.push_back(std::move(s));
            }
            rows.push_back(row);
            points.push_back({tag, eng});
        }
        if (!series.empty())
            w.put("p_s_trajectories.svg", line_plot_svg({"isolated-state probability", "t/T", "p_s", false, true}, series));
        if (has_labels) gauge_block(model, gauges, points, "T_ns", Ts, w, results);
        results["runs"] = rows;
    } else if (engine == "perturb") {
        GroundProjector proj = ground_projector(model);
        PerturbationSpectrum ps = project_transverse(proj, model);
        json mult = json::array();
        std::ostringstream os;
        os << "eigenvalue,multiplicity\n";
        for (const auto& m : ps.multiplets) {
            mult.push_back({{"eigenvalue", m.value}, {"multiplicity", m.multiplicity}});
            os << fmt_double(m.value) << ',' << m.multiplicity << '\n';
        }
        w.put("perturbation.csv", os.str());
        json pj = {{"rank", proj.rank()}, {"multiplets", mult}, {"isolated_overlap", ps.isolated_overlap}};
        w.put("perturbation.json", pj.dump(2) + "\n");
        results = pj;
    } else if (engine == "concurrence") {
        const double T = spec.value("T_ns", 1e4);
        const BathSpec bath = bath_from_json(spec.value("bath", json()));
        AnnealScheduleQ sched = schedule_from_json(spec.value("schedule", json()), T, base_dir);
        WclOptions o;
        o.n_steps = spec.value("steps", 200);
        o.record_every = spec.value("record_every", 10);
        o.coupling = parse_coupling(spec.value("coupling", std::string("sigma_z")));
        auto edges = spec.value("edges", std::vector<std::array<int, 2>>{{0, 4}, {0, 1}});
        json rows = json::array();
        for (const auto& e : edges) {
            const std::string tag = std::to_string(e[0]) + "_" + std::to_string(e[1]);
            auto c = at_axis("edge " + tag,
                             [&] { return baseline_curves(engine_model(model), sched, bath, e[0], e[1], o); });
            w.put("concurrence_" + tag + ".csv", concurrence_csv(c));
            std::vector<double> tf;
            for (double t : c.t) tf.push_back(t / T);
            w.put("concurrence_" + tag + ".svg",
                  line_plot_svg({"concurrence, qubits " + tag, "t/T", "C"},
                                {{"ground", tf, c.ground}, {"Gibbs", tf, c.gibbs}, {"WCL", tf, c.trajectory}}));
            rows.push_back({{"edge", e}, {"points", c.t.size()}});
        }
        results["edges"] = rows;
    } else {
        throw SpecError("unknown engine " + engine);
    }

    res.manifest = {{"engine", engine},
                    {"spec", spec},
                    {"model", model_to_json(model)},
                    {"perturb_delta", delta},
                    {"seed", seed},
                    {"threads_cap", "ANNEAL_SIG_THREADS"},
                    {"files", res.files},
                    {"results", results}};
    json gl = json::array();
    for (const auto& g : gauges) gl.push_back(g);
    res.manifest["gauges"] = gl;
    write_text((fs::path(outdir) / "manifest.json").string(), res.manifest.dump(2) + "\n");
    return res;
}

}  // namespace annealsig
