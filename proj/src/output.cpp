#include "chsys/output.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chsys/errors.hpp"

namespace chsys {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_file(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    return out;
}

std::string format_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_double(v[i]);
    }
    return s;
}

} // namespace

void write_outputs(const RunResult& result, const ScenarioConfig& cfg,
                   const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + out_dir + "': " + ec.message());

    const GridSpec& g = result.x_grid;
    for (std::size_t si = 0; si < result.snapshots.size(); ++si) {
        const SnapshotRecord& rec = result.snapshots[si];
        std::ostringstream name;
        name << "snapshot_" << si << ".csv";
        std::ofstream out = open_file(dir / name.str());
        out << "x,u,rho,mu_density\n";
        for (std::size_t i = 0; i < g.n; ++i) {
            out << format_double(g.node(i)) << "," << format_double(rec.u[i]) << ","
                << format_double(rec.rho[i]) << "," << format_double(rec.mu_density[i]) << "\n";
        }
        if (!out) throw Error("write failed for '" + (dir / name.str()).string() + "'");
    }

    {
        std::ofstream out = open_file(dir / "atoms.csv");
        out << "t,position,mass\n";
        for (const SnapshotRecord& rec : result.snapshots)
            for (const auto& a : rec.atoms)
                out << format_double(rec.t) << "," << format_double(a.pos) << ","
                    << format_double(a.mass) << "\n";
    }

    {
        std::ofstream out = open_file(dir / "diagnostics.csv");
        out << "t,energy,g_defect,r_defect,min_yxi,pq_defect\n";
        for (const StepSample& s : result.samples)
            out << format_double(s.t) << "," << format_double(s.energy) << ","
                << format_double(s.g_defect) << "," << format_double(s.r_defect) << ","
                << format_double(s.min_yxi) << "," << format_double(s.pq_defect) << "\n";
    }

    {
        std::ofstream out = open_file(dir / "run_manifest.txt");
        auto now = std::chrono::system_clock::now().time_since_epoch();
        auto secs = std::chrono::duration_cast<std::chrono::seconds>(now).count();
        out << "timestamp_unix = " << secs << "\n";
        out << "scenario = " << cfg.scenario << "\n";
        out << "mode = " << cfg.mode << "\n";
        out << "x_lo = " << format_double(cfg.x_lo) << "\n";
        out << "x_hi = " << format_double(cfg.x_hi) << "\n";
        out << "x_n = " << cfg.x_n << "\n";
        out << "xi_n = " << cfg.xi_n << "\n";
        out << "dt = " << format_double(cfg.dt) << "\n";
        out << "t_max = " << format_double(cfg.t_max) << "\n";
        out << "output_times = " << format_list(cfg.output_times) << "\n";
        out << "amplitude = " << format_double(cfg.amplitude) << "\n";
        out << "position = " << format_double(cfg.position) << "\n";
        out << "background_k = " << format_double(cfg.background_k) << "\n";
        out << "dam_height = " << format_double(cfg.dam_height) << "\n";
        out << "dam_halfwidth = " << format_double(cfg.dam_halfwidth) << "\n";
        out << "dam_smoothing = " << format_double(cfg.dam_smoothing) << "\n";
        out << "atom_pos = " << format_double(cfg.atom_pos) << "\n";
        out << "atom_mass = " << format_double(cfg.atom_mass) << "\n";
        out << "density_floors = " << format_list(cfg.density_floors) << "\n";
        out << "kappa = " << format_double(cfg.kappa) << "\n";
        out << "eta = " << format_double(cfg.eta) << "\n";
        out << "u_minus_inf = " << format_double(cfg.u_minus_inf) << "\n";
        out << "tol_bc = " << format_double(cfg.tol_bc) << "\n";
        out << "tol_G = " << format_double(cfg.tol_G) << "\n";
        out << "g_defect_bound = " << format_double(cfg.g_defect_bound) << "\n";
        out << "invariant_ok = " << (result.invariant_ok ? 1 : 0) << "\n";
        out << "snapshots = " << result.snapshots.size() << "\n";
    }
}

void write_vanishing(const VanishingResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + out_dir + "': " + ec.message());
    std::ofstream out = open_file(dir / "vanishing.csv");
    out << "k_n,sup_distance\n";
    for (const VanishingRow& r : result.rows)
        out << format_double(r.k_n) << "," << format_double(r.sup_dist) << "\n";
}

} // namespace chsys
