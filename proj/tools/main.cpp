// heckezeta: batch CLI for the transfer-operator / zeta toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include "hz/interval_maps.hpp"
#include "hz/scan.hpp"
#include "hz/transfer.hpp"
#include "hz/verify.hpp"
#include "hz/zeta.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace hz;

namespace {

constexpr const char* kVersion = "heckezeta 0.1.0";

struct GlobalCfg {
    std::string precision = "double"; // double | extended
    int threads = 1;
    unsigned seed = 12345;
    int dim = 40;
    double cutoff = 0; // 0: per-q default
    std::string out;
    std::string config_path;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Complex parse_complex(const std::string& str) {
    // forms: "2", "-1.5", "0.5+9.53i", "1-2i", "2i"
    std::string s = str;
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw CLI::ValidationError("empty complex literal");
    if (s.back() != 'i') return Complex(std::stod(s), 0.0);
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        std::string im = s.empty() || s == "+" ? "1" : (s == "-" ? "-1" : s);
        return Complex(0.0, std::stod(im));
    }
    std::string re = s.substr(0, split);
    std::string im = s.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return Complex(std::stod(re), std::stod(im));
}

Precision precision_of(const GlobalCfg& cfg) {
    return cfg.precision == "extended" ? Precision::f80 : Precision::f64;
}

double default_cutoff(int q) { return q <= 4 ? 1e4 : 1e3; }

std::string header(const GlobalCfg& cfg, int q, const std::string& extra) {
    std::ostringstream os;
    os << "# " << kVersion << "\n";
    os << "# q=" << q << " precision=" << cfg.precision << " dim=" << cfg.dim
       << " threads=" << cfg.threads << " seed=" << cfg.seed;
    if (!extra.empty()) os << " " << extra;
    os << "\n";
    return os.str();
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

json letters_json(const Word& w) {
    json arr = json::array();
    for (const Letter& l : w.letters)
        arr.push_back({{"q", l.qflag}, {"base", l.base}, {"exp", l.exp}});
    return arr;
}

json point_json(const ExtPoint& p) {
    if (p.infinite) return json{{"inf", true}};
    json coeffs = json::array();
    for (const auto& c : p.value.coeffs()) coeffs.push_back(c.get_str());
    return json{{"coeffs", coeffs}, {"float", p.value.embed()}};
}

void apply_config_file(GlobalCfg& cfg) {
    if (cfg.config_path.empty()) return;
    std::ifstream in(cfg.config_path);
    if (!in) throw std::runtime_error("cannot read config file: " + cfg.config_path);
    json j = json::parse(in);
    if (j.contains("precision")) cfg.precision = j["precision"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned>();
    if (j.contains("dim")) cfg.dim = j["dim"].get<int>();
    if (j.contains("cutoff")) cfg.cutoff = j["cutoff"].get<double>();
}

int cmd_info(const GlobalCfg& cfg, int q) {
    HeckeGroup G = make_group(q);
    Output out(cfg.out);
    out.os() << header(cfg, q, "");
    out.os() << "q = " << q << "\n";
    out.os() << "lambda = " << fmt(G.lambda.embed()) << "\n";
    out.os() << "minimal polynomial psi = " << G.field->psi_string() << "\n";
    out.os() << "field degree = " << G.field->degree() << "\n";
    out.os() << "m = " << G.m << "\n";
    out.os() << "parity = " << (G.q_even ? "even" : "odd") << "\n";
    out.os() << "g_1 = " << G.gen(1).str() << "\n";
    out.os() << "g_{q-1} = " << G.gen(q - 1).str() << "\n";
    out.os() << "1 cuspidal = " << (one_is_cuspidal(G) ? "yes" : "no") << "\n";
    return 0;
}

int cmd_words(const GlobalCfg& cfg, int q, const std::string& alphabet, int length, int max_exp,
              double max_norm) {
    HeckeGroup G = make_group(q);
    Alphabet a = alphabet == "G" ? Alphabet::G : Alphabet::GQ;
    WordCaps caps;
    caps.max_exponent = max_exp;
    caps.max_norm = max_norm;
    Output out(cfg.out);
    out.os() << header(cfg, q, "alphabet=" + alphabet + " length=" + std::to_string(length));
    enumerate_reduced_words(G, a, length, caps, [&](const Word& w, const BTags& t) {
        auto [eps, k] = eps_and_k(G, w);
        json line{{"letters", letters_json(w)},
                  {"N", word_norm(G, w)},
                  {"ell", w.length()},
                  {"det", word_det(w)},
                  {"eps", eps},
                  {"k", k},
                  {"B", json::array({t.b1, t.b2, t.b3, t.b4})}};
        out.os() << line.dump() << "\n";
    });
    return 0;
}

int cmd_classes(const GlobalCfg& cfg, int q, const std::string& group, double cutoff,
                int max_exp, int max_len) {
    HeckeGroup G = make_group(q);
    GroupTag tag = group == "gamma" ? GroupTag::Gamma : GroupTag::GammaTilde;
    if (cutoff <= 0) cutoff = cfg.cutoff > 0 ? cfg.cutoff : default_cutoff(q);
    WordCaps caps;
    caps.max_exponent = max_exp;
    caps.max_length = max_len;
    ClassList cl = enumerate_conj_classes(G, tag, cutoff, caps);
    Output out(cfg.out);
    out.os() << header(cfg, q,
                       "group=" + group + " cutoff=" + fmt(cutoff) +
                           " certified=" + (cl.certified ? "1" : "0"));
    if (!cl.certified)
        out.os() << "# warning: truncation caps below the certified bounds; the list may be "
                    "incomplete\n";
    for (const auto& rec : cl.classes) {
        json line{{"letters", letters_json(rec.canonical_word)},
                  {"N", rec.N},
                  {"ell", rec.ell},
                  {"n", rec.n},
                  {"det", rec.det},
                  {"eps", rec.eps},
                  {"k", rec.kcount}};
        if (G.q_even && tag == GroupTag::GammaTilde) line["boundary"] = rec.boundary;
        out.os() << line.dump() << "\n";
    }
    return 0;
}

int cmd_zeta(const GlobalCfg& cfg, int q, const std::string& which,
             const std::vector<std::string>& s_list, double cutoff) {
    HeckeGroup G = make_group(q);
    TruncationSpec tr;
    tr.norm_cutoff = cutoff > 0 ? cutoff : (cfg.cutoff > 0 ? cfg.cutoff : default_cutoff(q));
    Output out(cfg.out);
    out.os() << header(cfg, q, "which=" + which + " X=" + fmt(tr.norm_cutoff));
    out.os() << "s_re,s_im,which,value_re,value_im,tail_estimate,X,certified\n";
    ClassList cg, ct;
    bool need_g = which == "Z" || which == "ZVplus" || which == "ZVminus";
    bool need_t = which == "Zplus" || which == "Zminus" || which == "ZVplus" ||
                  which == "ZVminus";
    if (need_g) cg = enumerate_conj_classes(G, GroupTag::Gamma, tr.norm_cutoff);
    if (need_t) ct = enumerate_conj_classes(G, GroupTag::GammaTilde, tr.norm_cutoff);
    for (const std::string& str : s_list) {
        Complex s = parse_complex(str);
        ZetaValue z;
        if (which == "Z") z = selberg_Z(G, s, tr, &cg);
        else if (which == "Zplus") z = Z_pm(G, s, +1, tr, &ct);
        else if (which == "Zminus") z = Z_pm(G, s, -1, tr, &ct);
        else if (which == "ZVplus") z = ZV_pm(G, s, +1, tr, &cg, &ct);
        else if (which == "ZVminus") z = ZV_pm(G, s, -1, tr, &cg, &ct);
        else if (which == "Zcplus") z = Zc_pm(G, s, +1);
        else z = Zc_pm(G, s, -1);
        out.os() << fmt(s.real()) << "," << fmt(s.imag()) << "," << which << ","
                 << fmt(z.value.real()) << "," << fmt(z.value.imag()) << ","
                 << fmt(z.tail_estimate) << "," << fmt(tr.norm_cutoff) << ","
                 << (z.certified ? 1 : 0) << "\n";
    }
    return 0;
}

int cmd_det(const GlobalCfg& cfg, int q, const std::string& parity, const std::string& s_str,
            const std::string& dump_path) {
    HeckeGroup G = make_group(q);
    Complex s = parse_complex(s_str);
    Parity p = parity == "full" ? Parity::full
                                : (parity == "plus" ? Parity::plus : Parity::minus);
    Charts ch = build_charts(G, cfg.dim);
    BuildOptions opts;
    opts.precision = precision_of(cfg);
    OperatorMatrix M = build_fast_operator(G, s, p, ch, opts);
    FredholmDet d = fredholm_det(M);
    Output out(cfg.out);
    out.os() << header(cfg, q, "parity=" + parity + " s=" + s_str);
    out.os() << "det_re = " << fmt(d.value.real()) << "\n";
    out.os() << "det_im = " << fmt(d.value.imag()) << "\n";
    out.os() << "abs = " << fmt(std::abs(d.value)) << "\n";
    out.os() << "logdet_re = " << fmt(d.log_value.real()) << "\n";
    out.os() << "logdet_im = " << fmt(d.log_value.imag()) << "\n";
    if (!dump_path.empty()) {
        json jm{{"q", q},
                {"s", {s.real(), s.imag()}},
                {"parity", parity},
                {"dims", M.dims},
                {"size", M.size}};
        json rows = json::array();
        for (int i = 0; i < M.size; ++i) {
            json row = json::array();
            for (int j = 0; j < M.size; ++j) {
                Complex v = M.at(i, j);
                row.push_back({v.real(), v.imag()});
            }
            rows.push_back(std::move(row));
        }
        jm["matrix"] = std::move(rows);
        std::ofstream f(dump_path);
        if (!f) throw std::runtime_error("cannot open " + dump_path);
        f << jm.dump() << "\n";
    }
    return 0;
}

int cmd_scan(const GlobalCfg& cfg, int q, const std::string& parity, double sigma, double tmin,
             double tmax, double step, bool refine) {
    HeckeGroup G = make_group(q);
    int psign = parity == "plus" ? +1 : -1;
    ScanOptions opt;
    opt.basis_size = cfg.dim;
    opt.threads = cfg.threads;
    opt.precision = precision_of(cfg);
    bool json_out = cfg.out.size() > 5 && cfg.out.substr(cfg.out.size() - 5) == ".json";
    Output out(cfg.out);
    if (!refine) {
        auto samples = scan_line(G, psign, sigma, tmin, tmax, step, opt);
        out.os() << header(cfg, q,
                           "parity=" + parity + " sigma=" + fmt(sigma) + " step=" + fmt(step));
        out.os() << "t,det_re,det_im,det_abs,skipped\n";
        for (const auto& smp : samples)
            out.os() << fmt(smp.s.imag()) << "," << fmt(smp.det.real()) << ","
                     << fmt(smp.det.imag()) << "," << fmt(std::abs(smp.det)) << ","
                     << (smp.skipped ? 1 : 0) << "\n";
        return 0;
    }
    auto samples = scan_line(G, psign, sigma, tmin, tmax, step, opt);
    double scale = 0;
    for (const auto& smp : samples) scale = std::max(scale, std::abs(smp.det));
    std::vector<SpectralZero> zeros;
    for (size_t i = 1; i + 1 < samples.size(); ++i) {
        double v = std::abs(samples[i].det);
        if (samples[i].skipped) continue;
        if (!(v < std::abs(samples[i - 1].det) && v <= std::abs(samples[i + 1].det) &&
              v < 0.5 * scale))
            continue;
        try {
            SpectralZero z = refine_zero(G, psign, samples[i].s, opt);
            bool dup = false;
            for (const auto& prev : zeros)
                if (std::abs(prev.s - z.s) < 1e-4) dup = true;
            if (!dup) zeros.push_back(z);
        } catch (const ScanError&) {
            // dip did not certify into a zero
        }
    }
    if (json_out) {
        json jz{{"q", q}, {"parity", parity}, {"zeros", json::array()}};
        for (const auto& z : zeros)
            jz["zeros"].push_back({{"s_re", z.s.real()},
                                   {"s_im", z.s.imag()},
                                   {"winding", z.winding},
                                   {"residual", z.refinement_residual},
                                   {"stability", z.basis_stability}});
        out.os() << jz.dump(2) << "\n";
    } else {
        out.os() << header(cfg, q, "parity=" + parity + " sigma=" + fmt(sigma) + " refined=1");
        out.os() << "s_re,s_im,winding,residual,stability\n";
        for (const auto& z : zeros)
            out.os() << fmt(z.s.real()) << "," << fmt(z.s.imag()) << "," << z.winding << ","
                     << fmt(z.refinement_residual) << "," << fmt(z.basis_stability) << "\n";
    }
    return 0;
}

int cmd_maps(const GlobalCfg& cfg, int q, const std::string& system, int eta) {
    HeckeGroup G = make_group(q);
    SystemName name;
    if (system == "F") name = SystemName::F;
    else if (system == "G") name = SystemName::G;
    else if (system == "FQ") name = G.q_even ? SystemName::FQ_even : SystemName::FQ_odd;
    else name = G.q_even ? SystemName::GQ_even : SystemName::GQ_odd;
    BranchSystem sys = branch_table(G, name, eta);
    json j{{"q", q},
           {"system", system},
           {"eta", sys.eta},
           {"carrier", {point_json(sys.carrier_lo), point_json(sys.carrier_hi)}},
           {"branches", json::array()},
           {"families", json::array()}};
    for (const Branch& b : sys.branches) {
        j["branches"].push_back({{"lo", point_json(b.lo)},
                                 {"hi", point_json(b.hi)},
                                 {"element", b.map_element.str()},
                                 {"weight_c", b.weight_c.get_str()},
                                 {"weight_pm", b.weight_pm},
                                 {"point", b.is_point}});
    }
    for (const ParabolicFamily& f : sys.families) {
        j["families"].push_back({{"generator", f.gen.str()},
                                 {"qflag", f.qflag},
                                 {"section", {point_json(f.sec_lo), point_json(f.sec_hi)}},
                                 {"weight_c", f.weight_c.get_str()},
                                 {"weight_pm", f.weight_pm}});
    }
    Output out(cfg.out);
    out.os() << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const GlobalCfg& cfg, const std::string& suite, int q_filter) {
    auto results = run_suite(suite, cfg.threads);
    Output out(cfg.out);
    out.os() << header(cfg, q_filter, "suite=" + suite);
    int failed = 0, ran = 0;
    for (const auto& r : results) {
        if (q_filter > 0 &&
            r.name.find("q=" + std::to_string(q_filter)) == std::string::npos)
            continue;
        ++ran;
        const char* tag = r.pass ? "PASS" : (r.optional_info ? "INFO" : "FAIL");
        if (!r.pass && !r.optional_info) ++failed;
        char buf[256];
        std::snprintf(buf, sizeof buf, "[%s] %-78s observed %.3e  tol %.3e", tag,
                      r.name.c_str(), r.observed, r.tolerance);
        out.os() << buf << "\n";
    }
    out.os() << ran << " checks, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    GlobalCfg cfg;
    if (const char* env = std::getenv("HECKEZETA_PRECISION")) cfg.precision = env;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") cfg.config_path = argv[i + 1];
    try {
        apply_config_file(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{std::string(kVersion) +
                 " - transfer operators and Selberg-type zeta functions for Hecke "
                 "triangle groups"};
    app.add_option("--config", cfg.config_path, "JSON config file (merged under flags)");
    app.add_option("--precision", cfg.precision, "double | extended")
        ->check(CLI::IsMember({"double", "extended"}));
    app.add_option("--threads", cfg.threads, "worker threads for scans");
    app.add_option("--seed", cfg.seed, "seed for sampling tests");
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.require_subcommand(1);

    int q = 3;
    auto* info = app.add_subcommand("info", "group data for a given q");
    info->add_option("--q", q, "Hecke parameter q >= 3")->required();

    auto* words = app.add_subcommand("words", "enumerate reduced words as JSON lines");
    std::string alphabet = "GQ";
    int length = 1, max_exp = 8;
    double max_norm = 0;
    words->add_option("--q", q)->required();
    words->add_option("--alphabet", alphabet)->check(CLI::IsMember({"G", "GQ"}));
    words->add_option("--length", length, "exact word length")->required();
    words->add_option("--max-exp", max_exp, "exponent cap");
    words->add_option("--max-norm", max_norm, "norm cutoff (0: none)");

    auto* classes = app.add_subcommand("classes", "enumerate conjugacy classes as JSON lines");
    std::string group = "gamma";
    double cutoff = 0;
    int max_len = 0;
    classes->add_option("--q", q)->required();
    classes->add_option("--group", group)->check(CLI::IsMember({"gamma", "tilde"}));
    classes->add_option("--cutoff", cutoff, "norm cutoff X");
    classes->add_option("--max-exp", max_exp, "exponent cap override");
    classes->add_option("--max-len", max_len, "length cap override");

    auto* zeta = app.add_subcommand("zeta", "evaluate truncated zeta functions (CSV)");
    std::string which = "Z";
    std::vector<std::string> s_list;
    zeta->add_option("--q", q)->required();
    zeta->add_option("--which", which)
        ->check(CLI::IsMember({"Z", "Zplus", "Zminus", "ZVplus", "ZVminus", "Zcplus",
                               "Zcminus"}));
    zeta->add_option("--s", s_list, "evaluation points, a+bi literals")->required();
    zeta->add_option("--cutoff", cutoff, "norm cutoff X");

    auto* det = app.add_subcommand("det", "Fredholm determinant of 1 - L at s");
    std::string parity = "minus", s_str = "2", dump_path;
    int dim = 0;
    det->add_option("--q", q)->required();
    det->add_option("--parity", parity)->check(CLI::IsMember({"plus", "minus", "full"}));
    det->add_option("--s", s_str, "complex parameter, a+bi")->required();
    det->add_option("--dim", dim, "basis size per chart");
    det->add_option("--dump-matrix", dump_path, "write the operator matrix as JSON");

    auto* scan = app.add_subcommand("scan", "determinant scan on a horizontal line");
    double sigma = 0.5, tmin = 0, tmax = 1, step = 0.05;
    bool refine = false;
    scan->add_option("--q", q)->required();
    scan->add_option("--parity", parity)->check(CLI::IsMember({"plus", "minus"}));
    scan->add_option("--sigma", sigma, "Re s of the line");
    scan->add_option("--t-min", tmin)->required();
    scan->add_option("--t-max", tmax)->required();
    scan->add_option("--step", step, "grid step");
    scan->add_option("--dim", dim, "basis size per chart");
    scan->add_flag("--refine", refine, "certify and refine the dips into zeros");

    auto* maps = app.add_subcommand("maps", "dump branch tables as JSON");
    std::string system = "F";
    int eta = 0;
    maps->add_option("--q", q)->required();
    maps->add_option("--system", system)->check(CLI::IsMember({"F", "G", "FQ", "GQ"}));
    maps->add_option("--eta", eta, "0: Neumann (+), 1: Dirichlet (-)")
        ->check(CLI::IsMember({0, 1}));

    auto* verify = app.add_subcommand("verify", "run the acceptance suites");
    std::string suite = "all";
    int q_filter = 0;
    verify->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
    verify->add_option("--q", q_filter, "restrict the table to checks mentioning this q");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (dim > 0) cfg.dim = dim;
        if (*info) return cmd_info(cfg, q);
        if (*words) return cmd_words(cfg, q, alphabet, length, max_exp, max_norm);
        if (*classes) return cmd_classes(cfg, q, group, cutoff, max_exp, max_len);
        if (*zeta) return cmd_zeta(cfg, q, which, s_list, cutoff);
        if (*det) return cmd_det(cfg, q, parity, s_str, dump_path);
        if (*scan) return cmd_scan(cfg, q, parity, sigma, tmin, tmax, step, refine);
        if (*maps) return cmd_maps(cfg, q, system, eta);
        if (*verify) return cmd_verify(cfg, suite, q_filter);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
