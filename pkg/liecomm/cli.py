"""
Command-line front end: validate an algebra, solve a commutant, close it into a polynomial
algebra and symmetrize the result.

    python run_chain.py pipeline --algebra su3 --subalgebra so3 --max-degree 6 \
        --basis-change su3_so3.basis --format json --out runs/su3
"""

import argparse
import os
import sys

from .algebra_io import load_algebra
from .basic_utils import add_dict_to_argparser, load_defaults_config, resolve_seed, save_args
from .catalog import (
    DATA_DIR,
    canonical_name,
    casimir_polynomials,
    get_algebra,
    get_chain,
    get_subalgebra,
    published_polynomials,
    subalgebra_names,
)
from .closure import BasisChangeError, NotExpressibleError, change_basis, closes, load_basis_change, restricted_closure
from .commutant import (
    CommutantBasis,
    CommutantSolver,
    commutes_with_algebra,
    functional_independence_count,
    strict_mode_report,
)
from .cubic import SymmetrizedCubic
from .enveloping import EnvelopingAlgebra, symmetrize
from .expressions import ExpressionSyntaxError
from .lie_algebra import (
    LabelCountError,
    LieAlgebraError,
    Violation,
    check_subalgebra,
    invariant_count,
    label_counts,
    solve_ell0,
    validate,
)
from .poisson import PoissonRing, format_polynomial
from .presentation import GeneratingFunctionError, build_presentation, verify_presentation
from . import report as reports
from .utils import logger

COMMANDS = ("validate", "commutant", "close", "symmetrize", "pipeline")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NOT_EXPRESSIBLE = 4
EXIT_BASIS_CHANGE = 5
EXIT_GENERATING_FUNCTION = 6


class ValidationFailed(Exception):
    pass


def create_argparser():
    defaults = dict()
    defaults.update(load_defaults_config())
    parser = argparse.ArgumentParser(description="Exact commutants, polynomial algebras and their symmetrization.")
    parser.add_argument("command", choices=COMMANDS)
    add_dict_to_argparser(parser, defaults)
    # resolved by resolve_seed
    parser.set_defaults(seed=None)
    return parser


class ChainRun:
    """State of one invocation; each stage fills its section of the report."""

    def __init__(self, args):
        self.args = args
        if args.max_degree < 1:
            raise argparse.ArgumentTypeError(f"max_degree must be at least 1, got {args.max_degree}")
        if args.representatives not in ("auto", "solver", "published"):
            raise argparse.ArgumentTypeError(f"representatives must be auto, solver or published, got {args.representatives!r}")
        self.alg, self.sub, self.chain = self._load()
        self.poisson = PoissonRing(self.alg)
        self.report = reports.new_report(args.command, self.alg, self.sub, vars(args))
        self.named = []
        self.basis = None
        self.presentation = None
        self.degrees = []

    def _load(self):
        args = self.args
        if os.path.exists(args.algebra):
            alg, subalgebras = load_algebra(args.algebra)
            if not args.subalgebra:
                sub = next(iter(subalgebras.values()), None)
            elif args.subalgebra in subalgebras:
                sub = subalgebras[args.subalgebra]
            else:
                raise NotImplementedError(f"unknown subalgebra {args.subalgebra} in {args.algebra}")
            return alg, sub, None
        name = canonical_name(args.algebra)
        alg = get_algebra(name)
        sub_name = args.subalgebra or next(iter(subalgebra_names(name)), "")
        sub = get_subalgebra(name, sub_name, alg) if sub_name else None
        chain = get_chain(name)
        if chain is not None and (sub is None or chain.subalgebra != sub.name):
            chain = None
        return alg, sub, chain

    def require_subalgebra(self):
        if self.sub is None:
            raise argparse.ArgumentTypeError(f"{self.args.command} needs a subalgebra")
        return self.sub

    # stages

    def validate(self):
        violations = validate(self.alg)
        if self.sub is not None and not check_subalgebra(self.sub):
            violations.append(Violation("subalgebra", self.sub.names, "span is not closed under the bracket"))
        if self.chain is not None:
            for text, poly in zip(self.chain.casimirs, casimir_polynomials(self.poisson, self.chain)):
                if not commutes_with_algebra(self.poisson, poly):
                    violations.append(Violation("casimir", (text,), "does not commute with the algebra"))
        self.report["validation"] = reports.violations_section(violations)
        if violations:
            raise ValidationFailed(f"{len(violations)} violated identities in {self.alg.title or 'the algebra'}")

        args = self.args
        N_g = invariant_count(self.alg, draws=args.rank_draws, seed=args.seed, sample_range=args.sample_range)
        N_sub, counts = None, None
        if self.sub is not None:
            N_sub = invariant_count(self.sub.algebra, draws=args.rank_draws, seed=args.seed, sample_range=args.sample_range)
            ell0 = args.ell0
            if ell0 < 0:
                ell0 = solve_ell0(self.alg, self.sub, self.chain.n0, draws=args.rank_draws, seed=args.seed) if self.chain else 0
            counts = label_counts(self.alg, self.sub, ell0, draws=args.rank_draws, seed=args.seed)
        self.report["counts"] = reports.counts_section(N_g, N_sub, counts)

    def commutant(self):
        args = self.args
        sub = self.require_subalgebra()
        if args.strict_k:
            extra = list(self.chain.strict_extra) if self.chain and self.chain.strict_extra else ["K"]
            sub = sub.extended(extra)
        solver = CommutantSolver(self.alg, sub, self.poisson)
        closed = closes if args.auto_stop else None
        found = solver.run(args.max_degree, auto_stop=args.auto_stop, closed=closed)
        self.degrees = reports.degree_records(found)
        fi = functional_independence_count(found, draws=args.rank_draws, seed=args.seed) if len(found) else 0
        self.report["degrees"] = self.degrees
        self.report["commutant"] = reports.basis_section(found, fi)
        self.solver = solver
        self.basis = found

        if self.chain is None:
            if args.representatives == "published":
                raise argparse.ArgumentTypeError(f"{args.algebra} has no published basis")
            return
        self.named = published_polynomials(self.poisson, self.chain)
        inside = [(n, p) for n, p in self.named if self._degree(p) <= args.max_degree]
        results = solver.match([p for _, p in inside])
        self.report["published"] = reports.match_section([n for n, _ in inside], results)
        if self.chain.printed_variants:
            printed = dict(published_polynomials(self.poisson, self.chain, variants=True))
            names = [n for n, _ in self.chain.printed_variants]
            self.report["printed_variants"] = reports.match_section(names, solver.match([printed[n] for n in names]))
        if self.chain.strict_extra:
            self.report["strict_k"] = strict_mode_report(self.poisson, self.named, self.chain.strict_extra)
        named = dict(self.named)
        self.report["published_brackets"] = [
            {"pair": [x, y], "value": expected,
             "ok": self.poisson.lp_bracket(named[x], named[y]) == self.poisson.parse(expected, named)}
            for x, y, expected in self.chain.brackets
        ]

        complete = len(inside) == len(self.named) and all(results)
        if args.representatives == "published" and not complete:
            raise ValidationFailed("the published basis does not pass the commutant check at this max_degree")
        if args.representatives != "solver" and complete:
            logger.log(f"using the published representatives {', '.join(n for n, _ in self.named)}")
            self.basis = CommutantBasis.from_polynomials(
                self.poisson, [p for _, p in self.named], names=[n for n, _ in self.named], solutions=found.solutions
            )
            self.report["representatives"] = "published"
            fi_published = functional_independence_count(self.basis, draws=args.rank_draws, seed=args.seed)
            self.report["published_basis"] = {
                "count": len(self.basis),
                "degrees": self.basis.degrees,
                "functional_independence": fi_published,
            }
            if self.chain.quadratic_subset:
                table = restricted_closure(self.basis, self.chain.quadratic_subset, 3)
                self.report["quadratic_subset"] = [
                    {"pair": list(pair), "value": format_polynomial(value)} for pair, value in table.items()
                ]
        else:
            self.report["representatives"] = "solver"

    @staticmethod
    def _degree(p):
        return max(sum(m) for m in p.monoms()) if p else 0

    def close(self):
        args = self.args
        if self.basis is None:
            self.commutant()
        if not len(self.basis):
            self.report["presentation"] = None
            logger.log("empty commutant basis; nothing to close")
            return
        basis = self.basis
        if args.basis_change:
            path = args.basis_change
            if not os.path.exists(path):
                path = os.path.join(DATA_DIR, path)
            try:
                definitions = load_basis_change(path)
            except (OSError, ExpressionSyntaxError) as exc:
                raise BasisChangeError(f"cannot read basis change {args.basis_change}: {exc}") from exc
            change = change_basis(basis, definitions, self.solver)
            self.report["basis_change"] = {
                "file": os.path.basename(path),
                "discarded": [{"name": n, "relation": r} for n, r in change.discarded],
                "generators": [
                    {"name": e.name, "degree": e.degree, "central": e.is_central} for e in change.basis
                ],
            }
            basis = change.basis
        relation_weights = None
        if self.chain is not None and self.chain.relation_weights and basis is self.basis:
            relation_weights = list(self.chain.relation_weights)
        self.presentation = build_presentation(basis, relation_weights=relation_weights)
        self.report["presentation"] = reports.presentation_section(self.presentation)
        violations = verify_presentation(self.presentation)
        self.report["presentation_check"] = reports.violations_section(violations)
        if violations:
            raise ValidationFailed(f"{len(violations)} entries of the presentation fail the concrete check")

    def symmetrize(self, required=True):
        if self.presentation is None:
            self.close()
        pres = self.presentation
        if pres is None or pres.generating_function is None:
            if required:
                raise GeneratingFunctionError("symmetrization needs a three-generator cubic presentation")
            self.report["symmetrized"] = None
            return
        env = EnvelopingAlgebra(self.alg)
        sym = SymmetrizedCubic(pres, env)
        section = reports.symmetrized_section(sym)
        if self.chain is not None and self.chain.nc_printed and self.named:
            named = dict(self.named)
            section["printed_forms"] = [
                {"name": name, "ok": symmetrize(env, named[name]) == env.parse(text)}
                for name, text in self.chain.nc_printed
            ]
        violations = sym.check()
        section["check"] = reports.violations_section(violations)
        self.report["symmetrized"] = section
        if violations:
            raise ValidationFailed(f"{len(violations)} identities of the symmetrized algebra fail")


def run(args) -> int:
    run_ = ChainRun(args)
    status = EXIT_OK
    try:
        if args.command in ("validate", "pipeline"):
            run_.validate()
        if args.command in ("commutant", "close", "symmetrize", "pipeline"):
            run_.commutant()
        if args.command in ("close", "symmetrize", "pipeline"):
            run_.close()
        if args.command == "symmetrize":
            run_.symmetrize()
        if args.command == "pipeline":
            run_.symmetrize(required=False)
    except (ValidationFailed, LieAlgebraError, LabelCountError) as exc:
        status = _fail(run_, EXIT_VALIDATION, exc)
    except NotExpressibleError as exc:
        status = _fail(run_, EXIT_NOT_EXPRESSIBLE, exc)
        run_.report["error"]["pair"] = list(exc.pair) if exc.pair else None
        if exc.residual is not None:
            run_.report["error"]["residual"] = run_.poisson.format(exc.residual)
    except BasisChangeError as exc:
        status = _fail(run_, EXIT_BASIS_CHANGE, exc)
    except GeneratingFunctionError as exc:
        status = _fail(run_, EXIT_GENERATING_FUNCTION, exc)
    run_.report["status"] = status

    text = reports.write_report(run_.report, args.format, args.out, run_.degrees)
    if text is not None:
        sys.stdout.write(text)
    return status


def _fail(run_, status, exc) -> int:
    logger.error(str(exc))
    run_.report["error"] = {"code": status, "message": str(exc)}
    return status


def main(argv=None) -> int:
    parser = create_argparser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        resolve_seed(args)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE

    logger.configure(dir=args.out or None, format_strs=args.log_format.split(","))
    if args.out:
        save_args(args, args.out)
    try:
        return run(args)
    except (NotImplementedError, argparse.ArgumentTypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except LieAlgebraError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
