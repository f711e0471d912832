#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace d1q2::cli;

int main(int argc, char** argv) {
    CLI::App app{"D1Q2 lattice Boltzmann scheme: simulation and boundary stability analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    Scenario sc;
    std::string flux = "linear";
    bool svg = false;
    auto* courant = app.add_option("--courant", sc.courant, "Courant number C = V / lambda");
    app.add_option("--omega", sc.omega, "relaxation parameter in (0, 2]");
    app.add_option("--lambda", sc.lambda, "lattice velocity dx / dt");
    app.add_option("--points", sc.points, "number of grid points J");
    app.add_option("--length", sc.length, "domain length L");
    app.add_option("--final-time", sc.final_time, "final time T");
    app.add_option("--flux", flux, "linear | linear:<V> | burgers");
    app.add_option("--outflow", sc.outflow, "extrap:<sigma> | kinetic");
    app.add_option("--source", sc.source, "off | correct");
    app.add_option("--datum", sc.datum, "sin | tanh | impulse:<j> | zero | random");
    app.add_option("--seed", sc.seed, "seed for random data");
    app.add_option("--out", sc.out, "output directory");
    app.add_flag("--svg", svg, "also write SVG plots");

    SimulateOptions sim;
    auto* c_sim = app.add_subcommand("simulate", "run the scheme, write trajectory and boundary series");
    c_sim->add_option("--steps", sim.steps, "number of steps (default: final time)");
    c_sim->add_option("--snapshot-every", sim.snapshot_every, "write u every k steps");

    GrowthOptions gr;
    auto* c_gr = app.add_subcommand("growth", "fit the growth exponent of |u_0^n|");
    c_gr->add_option("--regime", gr.regime, "pre | long")->check(CLI::IsMember({"pre", "long"}));
    c_gr->add_option("--lo", gr.lo, "first step of the fit window");
    c_gr->add_option("--hi", gr.hi, "last step of the fit window");

    ConvergeOptions cv;
    std::string cv_list;
    auto* c_cv = app.add_subcommand("converge", "L2 error and observed order over a grid family");
    c_cv->add_option("--intervals", cv_list, "J-1 values, a,b,c or lo:hi[:step]");

    EquivalenceOptions eq;
    auto* c_eq = app.add_subcommand("equivalence", "compare the LBM with its finite-difference form");
    c_eq->add_option("--steps", eq.steps, "number of steps");

    auto* c_me = app.add_subcommand("modified-eq", "effective advection of every stencil");

    GksOptions gk;
    auto* c_gk = app.add_subcommand("gks", "normal-mode stability verdict");
    c_gk->add_flag("--sweep", gk.sweep, "table over sigma, omega and C");
    c_gk->add_flag("--kinetic-cubic", gk.kinetic_cubic, "moduli of the kinetic boundary roots against C");
    c_gk->add_option("--c-min", gk.c_min);
    c_gk->add_option("--c-max", gk.c_max);
    c_gk->add_option("--samples", gk.samples)->check(CLI::PositiveNumber);

    SpectrumOptions sp;
    auto* c_sp = app.add_subcommand("spectrum", "eigenvalues and asymptotic spectrum of a scheme matrix");
    c_sp->add_option("--matrix", sp.matrix, "lbm | fd | toeplitz | circulant");
    c_sp->add_option("--samples", sp.samples, "points on the asymptotic curve")->check(CLI::PositiveNumber);

    PseudoOptions ps;
    auto* c_ps = app.add_subcommand("pseudospectrum", "sigma_min(z - E) on a grid");
    c_ps->add_option("--matrix", ps.matrix, "lbm | fd | toeplitz | circulant");
    c_ps->add_option("--re-min", ps.grid.re_min);
    c_ps->add_option("--re-max", ps.grid.re_max);
    c_ps->add_option("--im-min", ps.grid.im_min);
    c_ps->add_option("--im-max", ps.grid.im_max);
    c_ps->add_option("--nx", ps.grid.nx)->check(CLI::PositiveNumber);
    c_ps->add_option("--ny", ps.grid.ny)->check(CLI::PositiveNumber);

    DeviationOptions dv;
    std::string dv_target, dv_sizes;
    auto* c_dv = app.add_subcommand("deviation", "smallest perturbation placing an eigenvalue at a target");
    c_dv->add_option("--target", dv_target, "re or re,im");
    c_dv->add_option("--sizes", dv_sizes, "J values, a,b,c or lo:hi[:step]");
    c_dv->add_flag("--preset", dv.preset, "fixed pair of conditions for every outflow rule");

    ReflectOptions rf;
    std::string rf_z0;
    auto* c_rf = app.add_subcommand("reflect", "outflow reflection coefficient and its pole order");
    c_rf->add_option("--z0", rf_z0, "re or re,im");
    c_rf->add_option("--radii", rf.radii, "circle radii for the fit");

    CLI11_PARSE(app, argc, argv);

    try {
        normalize_flux(sc, flux, courant->count() > 0);
        sim.svg = cv.svg = sp.svg = ps.svg = dv.svg = svg;
        if (!cv_list.empty()) cv.intervals = parse_int_list(cv_list);
        if (!dv_target.empty()) dv.target = parse_complex(dv_target);
        if (!dv_sizes.empty()) dv.sizes = parse_int_list(dv_sizes);
        if (!rf_z0.empty()) rf.z0 = parse_complex(rf_z0);
        sc.make_outflow();
        sc.make_source();
        sc.make_data();
        sc.params().validate();

        if (c_sim->parsed()) return cmd_simulate(sc, sim);
        if (c_gr->parsed()) return cmd_growth(sc, gr);
        if (c_cv->parsed()) return cmd_converge(sc, cv);
        if (c_eq->parsed()) return cmd_equivalence(sc, eq);
        if (c_me->parsed()) return cmd_modified_eq(sc);
        if (c_gk->parsed()) return cmd_gks(sc, gk);
        if (c_sp->parsed()) return cmd_spectrum(sc, sp);
        if (c_ps->parsed()) return cmd_pseudospectrum(sc, ps);
        if (c_dv->parsed()) return cmd_deviation(sc, dv);
        if (c_rf->parsed()) return cmd_reflect(sc, rf);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
