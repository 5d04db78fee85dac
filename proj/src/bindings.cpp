#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gequeue/qbd_solver.hpp"
#include "gequeue/simulator.hpp"
#include "gequeue/sweep.hpp"

namespace py = pybind11;
using namespace gequeue;

namespace {

using PyMat = std::array<std::array<double, 2>, 2>;
using PyVec = std::array<double, 2>;

PyMat to_py(const Mat2& m) {
    return {{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}};
}

PyVec to_py(const Vec2& v) { return {v[0], v[1]}; }

Vec2 vec_from(const PyVec& v) { return {v[0], v[1]}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Queueing analysis of random linear codes over a two-state erasure channel";

    py::register_exception<UnstableSystemError>(m, "UnstableSystemError", PyExc_RuntimeError);
    py::register_exception<SingularMatrixError>(m, "SingularMatrixError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<ChannelParams>(m, "ChannelParams")
        .def(py::init<double, double, double, double>(), py::arg("alpha"), py::arg("beta"),
             py::arg("eps_b"), py::arg("eps_g"))
        .def_readonly("alpha", &ChannelParams::alpha)
        .def_readonly("beta", &ChannelParams::beta)
        .def_readonly("eps_b", &ChannelParams::eps_b)
        .def_readonly("eps_g", &ChannelParams::eps_g)
        .def("__repr__", [](const ChannelParams& p) {
            return "ChannelParams(alpha=" + std::to_string(p.alpha) +
                   ", beta=" + std::to_string(p.beta) + ", eps_b=" + std::to_string(p.eps_b) +
                   ", eps_g=" + std::to_string(p.eps_g) + ")";
        });

    py::class_<CodeConfig>(m, "CodeConfig")
        .def(py::init<int, int>(), py::arg("blocklength"), py::arg("info_bits"))
        .def_readonly("blocklength", &CodeConfig::blocklength)
        .def_readonly("info_bits", &CodeConfig::info_bits)
        .def_property_readonly("parity_bits", &CodeConfig::parity_bits)
        .def_property_readonly("rate", &CodeConfig::rate);

    py::class_<TrafficParams>(m, "TrafficParams")
        .def(py::init<double, double>(), py::arg("gamma"), py::arg("rho"))
        .def_readonly("gamma", &TrafficParams::gamma)
        .def_readonly("rho", &TrafficParams::rho);

    m.def("channel_transition_matrix",
          [](const ChannelParams& p) { return to_py(channel_transition_matrix(p)); });
    m.def("channel_stationary",
          [](const ChannelParams& p) { return to_py(channel_stationary(p)); });
    m.def("channel_memory", &channel_memory);
    m.def("average_erasure_probability", &average_erasure_probability);

    py::class_<ErasureJoint>(m, "ErasureJoint")
        .def(py::init<const ChannelParams&, int>(), py::arg("channel"), py::arg("blocklength"))
        .def_property_readonly("blocklength", &ErasureJoint::blocklength)
        .def("prob", &ErasureJoint::prob, py::arg("from_state"), py::arg("to_state"),
             py::arg("erasures"))
        .def("state_marginal",
             [](const ErasureJoint& j) { return to_py(j.state_marginal()); });

    m.def("failure_probability", &failure_probability, py::arg("parity_bits"),
          py::arg("erasures"));
    m.def(
        "avg_failure_probability",
        [](const CodeConfig& code, const ErasureJoint& joint, const PyVec& dist) {
            return avg_failure_probability(code, joint, vec_from(dist));
        },
        py::arg("code"), py::arg("joint"), py::arg("initial_state_dist"));
    m.def(
        "rank_failure_frequency",
        [](int parity_bits, int erasures, std::uint64_t draws, std::uint64_t seed) {
            RngStream rng(seed);
            std::uint64_t fails = 0;
            for (std::uint64_t i = 0; i < draws; ++i)
                if (rank_failure_sample(parity_bits, erasures, rng)) ++fails;
            return static_cast<double>(fails) / static_cast<double>(draws);
        },
        py::arg("parity_bits"), py::arg("erasures"), py::arg("draws"), py::arg("seed"),
        "Empirical decoding-failure rate from random parity submatrix ranks");

    m.def("segment_completion_prob", &segment_completion_prob, py::arg("traffic"),
          py::arg("code"));

    py::class_<QbdBlocks>(m, "QbdBlocks")
        .def_property_readonly("a0", [](const QbdBlocks& b) { return to_py(b.a0); })
        .def_property_readonly("a1", [](const QbdBlocks& b) { return to_py(b.a1); })
        .def_property_readonly("a2", [](const QbdBlocks& b) { return to_py(b.a2); })
        .def_property_readonly("c0", [](const QbdBlocks& b) { return to_py(b.c0); })
        .def_property_readonly("c1", [](const QbdBlocks& b) { return to_py(b.c1); });

    m.def("build_blocks",
          py::overload_cast<const ChannelParams&, const CodeConfig&, const TrafficParams&>(
              &build_blocks),
          py::arg("channel"), py::arg("code"), py::arg("traffic"));
    m.def("stability_margin", &stability_margin, py::arg("blocks"), py::arg("channel"));

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init([](double tol, std::size_t max_iter) {
                 return SolverOptions{tol, max_iter};
             }),
             py::arg("tol") = 1e-13, py::arg("max_iter") = 1000000)
        .def_readwrite("tol", &SolverOptions::tol)
        .def_readwrite("max_iter", &SolverOptions::max_iter);

    py::class_<StationarySolution>(m, "StationarySolution")
        .def_property_readonly("rate_matrix",
                               [](const StationarySolution& s) { return to_py(s.rate_matrix); })
        .def_property_readonly(
            "boundary_matrix",
            [](const StationarySolution& s) { return to_py(s.boundary_matrix); })
        .def_property_readonly("pi0",
                               [](const StationarySolution& s) { return to_py(s.pi0); })
        .def_readonly("spectral_radius_r", &StationarySolution::spectral_radius_r)
        .def_readonly("iterations_used", &StationarySolution::iterations_used)
        .def_readonly("residual", &StationarySolution::residual)
        .def_readonly("margin", &StationarySolution::margin)
        .def_readonly("ill_conditioned", &StationarySolution::ill_conditioned)
        .def("level_distribution",
             [](const StationarySolution& s, int q) { return to_py(level_distribution(s, q)); },
             py::arg("level"))
        .def("tail_probability",
             [](const StationarySolution& s, int tau) { return tail_probability(s, tau); },
             py::arg("tau"))
        .def("log_tail_probability",
             [](const StationarySolution& s, int tau) { return log_tail_probability(s, tau); },
             py::arg("tau"))
        .def("decay_rate", [](const StationarySolution& s) { return decay_rate(s); })
        .def("mean_queue_length",
             [](const StationarySolution& s) { return mean_queue_length(s); });

    m.def("solve_stationary", &solve_stationary, py::arg("blocks"), py::arg("channel"),
          py::arg("options") = SolverOptions{});

    py::enum_<DecodeFidelity>(m, "DecodeFidelity")
        .value("analytical_failure", DecodeFidelity::analytical_failure)
        .value("matrix_sampling", DecodeFidelity::matrix_sampling);

    py::class_<TailEstimate>(m, "TailEstimate")
        .def_readonly("tau", &TailEstimate::tau)
        .def_readonly("frequency", &TailEstimate::frequency)
        .def_readonly("std_error", &TailEstimate::std_error);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("level_masses", &SimResult::level_masses)
        .def_readonly("tails", &SimResult::tails)
        .def_readonly("mean_queue", &SimResult::mean_queue)
        .def_readonly("mean_queue_std_error", &SimResult::mean_queue_std_error)
        .def_readonly("decode_attempts", &SimResult::decode_attempts)
        .def_readonly("decode_failures", &SimResult::decode_failures)
        .def_readonly("recorded_blocks", &SimResult::recorded_blocks)
        .def_readonly("seed", &SimResult::seed)
        .def("state_b_frequency", &SimResult::state_b_frequency)
        .def("tail_frequency", &SimResult::tail_frequency, py::arg("tau"));

    m.def(
        "simulate",
        [](const ChannelParams& channel, const CodeConfig& code, const TrafficParams& traffic,
           std::uint64_t blocks, std::uint64_t warmup_blocks, std::uint64_t seed,
           DecodeFidelity fidelity, const std::vector<int>& tau_list,
           bool materialize_packet_lengths) {
            SimConfig config{channel,  code, traffic,  blocks,
                             warmup_blocks, seed, fidelity, tau_list,
                             materialize_packet_lengths};
            return simulate(config);
        },
        py::arg("channel"), py::arg("code"), py::arg("traffic"), py::arg("blocks"),
        py::arg("warmup_blocks") = 1000, py::arg("seed") = 1,
        py::arg("fidelity") = DecodeFidelity::analytical_failure,
        py::arg("tau_list") = std::vector<int>{5, 10, 15, 20, 25},
        py::arg("materialize_packet_lengths") = false);

    py::class_<ErasureHistogram>(m, "ErasureHistogram")
        .def_readonly("blocklength", &ErasureHistogram::blocklength)
        .def_readonly("blocks", &ErasureHistogram::blocks)
        .def("frequency", &ErasureHistogram::frequency, py::arg("from_state"),
             py::arg("to_state"), py::arg("erasures"));

    m.def("simulate_erasure_histogram", &simulate_erasure_histogram, py::arg("channel"),
          py::arg("blocklength"), py::arg("blocks"), py::arg("seed"));

    py::class_<CodeRateRow>(m, "CodeRateRow")
        .def_readonly("info_bits", &CodeRateRow::info_bits)
        .def_readonly("stable", &CodeRateRow::stable)
        .def_readonly("margin", &CodeRateRow::margin)
        .def_readonly("tail", &CodeRateRow::tail)
        .def_readonly("decay", &CodeRateRow::decay)
        .def_readonly("mean_queue", &CodeRateRow::mean_queue)
        .def_readonly("throughput", &CodeRateRow::throughput);

    py::class_<CodeRateSweepResult>(m, "CodeRateSweepResult")
        .def_readonly("tau_list", &CodeRateSweepResult::tau_list)
        .def_readonly("rows", &CodeRateSweepResult::rows)
        .def_readonly("argmin_tail", &CodeRateSweepResult::argmin_tail)
        .def_readonly("argmin_tail_tied", &CodeRateSweepResult::argmin_tail_tied)
        .def_readonly("argmax_decay", &CodeRateSweepResult::argmax_decay)
        .def_readonly("argmax_throughput", &CodeRateSweepResult::argmax_throughput);

    m.def(
        "sweep_code_rate",
        [](const ChannelParams& channel, int blocklength, const TrafficParams& traffic,
           int k_min, int k_max, const std::vector<int>& tau_list,
           const SolverOptions& options) {
            SweepSpec spec{channel, blocklength, traffic, k_min, k_max, tau_list, options};
            return sweep_code_rate(spec);
        },
        py::arg("channel"), py::arg("blocklength"), py::arg("traffic"), py::arg("k_min"),
        py::arg("k_max"), py::arg("tau_list") = std::vector<int>{5, 10, 15, 20, 25},
        py::arg("options") = SolverOptions{});

    m.def("infinite_backlog_throughput",
          py::overload_cast<const ChannelParams&, const CodeConfig&>(
              &infinite_backlog_throughput),
          py::arg("channel"), py::arg("code"));

    py::class_<SurfacePoint>(m, "SurfacePoint")
        .def_readonly("info_bits", &SurfacePoint::info_bits)
        .def_readonly("arrival_bits_per_block", &SurfacePoint::arrival_bits_per_block)
        .def_readonly("gamma", &SurfacePoint::gamma)
        .def_readonly("rho", &SurfacePoint::rho)
        .def_readonly("stable", &SurfacePoint::stable)
        .def_readonly("margin", &SurfacePoint::margin)
        .def_readonly("tail_decay", &SurfacePoint::tail_decay);

    m.def(
        "decay_surface",
        [](const ChannelParams& channel, int blocklength, double gamma, int k_min, int k_max,
           const std::vector<double>& arrival_bits_per_block, const SolverOptions& options) {
            SurfaceSpec spec{channel, blocklength,           gamma,  k_min,
                             k_max,   arrival_bits_per_block, options};
            return decay_surface(spec);
        },
        py::arg("channel"), py::arg("blocklength"), py::arg("gamma"), py::arg("k_min"),
        py::arg("k_max"), py::arg("arrival_bits_per_block"),
        py::arg("options") = SolverOptions{});

    py::class_<RateReport>(m, "RateReport")
        .def_readonly("slot_seconds", &RateReport::slot_seconds)
        .def_readonly("arrival_bits_per_sec", &RateReport::arrival_bits_per_sec)
        .def_readonly("ergodic_capacity_bits_per_sec",
                      &RateReport::ergodic_capacity_bits_per_sec)
        .def_readonly("shannon_limit_bits_per_block",
                      &RateReport::shannon_limit_bits_per_block)
        .def_readonly("avg_erasure", &RateReport::avg_erasure);

    m.def("rate_conversions", &rate_conversions, py::arg("channel"), py::arg("code"),
          py::arg("traffic"), py::arg("slot_seconds"));
}
