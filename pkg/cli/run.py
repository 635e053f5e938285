#!/usr/bin/env python3
"""
cli - Příkazová řádka pro idla.

Příkazy exact-dist, simulate, runtime, ntoss a verify. Data jdou na stdout
(csv nebo json), logy na stderr. S --output-dir se navíc zapíše adresář běhu
runs/<RUN_ID>/ s daty, metrikami a manifestem.
"""

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import ValidationError

# Import idla library
sys.path.insert(0, str(Path(__file__).parent.parent))
from idla.config import Settings, load_settings
from idla.lib import (
    FAIR, Bias, Manifest, SimConfig, build_envelope, chi_square, encode,
    exact_distribution, exact_distribution_biased, expected_total_tosses, ntoss_distribution,
    is_valid_run_id, new_run_id, rational_cells, run_dir, run_trials, runtime_table
)
from idla.lib.envelope import FORMATS, optional_rational_cells
from idla.logger import get_logger, setup_logger
from idla.schemas.pydantic.envelope import OutputEnvelope

from verify import PUBLISHED_NTOSS_SCALED, SUITES, run_suites

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

# (obálka, exit code, první selhání)
CommandResult = Tuple[OutputEnvelope, int, Optional[str]]


def parse_bias(text: Optional[str]) -> Bias:
    """--bias "a/b" -> Bias; bez hodnoty symetrická mince."""
    if text is None:
        return FAIR
    return Bias.parse(text)


def _scaled_cell(value: Fraction) -> Any:
    """Celé číslo, pokud je škálovaná pravděpodobnost celá, jinak "a/b"."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


class IdlaRunner:
    """Hlavní runner pro CLI příkazy."""

    def __init__(self, settings: Settings, fmt: str = "csv", output_dir: Optional[Path] = None,
                 run_id: Optional[str] = None):
        self.settings = settings
        self.fmt = fmt
        self.output_dir = Path(output_dir) if output_dir else None
        self.run_id = run_id

    # ---- Příkazy ----

    def exact_dist(self, args: argparse.Namespace) -> CommandResult:
        bias = parse_bias(args.bias)
        if bias.is_fair:
            dist = exact_distribution(args.n)
        else:
            dist = exact_distribution_biased(args.n, bias)
        rows = [{'k': k, **rational_cells('probability', dist[k])} for k in range(args.n)]
        envelope = build_envelope('exact-dist', {'n': args.n, 'bias': bias.p_right}, rows)
        return envelope, EXIT_OK, None

    def simulate(self, args: argparse.Namespace) -> CommandResult:
        bias = parse_bias(args.bias)
        config = SimConfig(
            n_particles=args.n,
            trials=args.trials,
            bias=bias,
            master_seed=args.seed,
            worker_count=args.workers if args.workers is not None else self.settings.default_workers,
            chunk_size=self.settings.chunk_size,
        )
        summary = run_trials(config)
        exact = exact_distribution(args.n) if bias.is_fair else exact_distribution_biased(args.n, bias)
        probabilities = exact.probabilities(range(args.n))
        fit = chi_square(summary.counts_by_k, probabilities, summary.trials)
        expected = expected_total_tosses(args.n, bias)

        run_columns = {
            'sse': fit.sse,
            'chi_square': fit.chi_square_statistic,
            'dof': fit.degrees_of_freedom,
            'chi_square_threshold': fit.threshold,
            'fit_passes': fit.passes,
            'mean_tosses': summary.mean_tosses,
            'variance_tosses': summary.variance_tosses,
            'std_error_tosses': summary.std_error_tosses,
            **rational_cells('expected_tosses', expected),
        }
        rows = []
        for k in range(args.n):
            rows.append({
                'k': k,
                'count': summary.counts_by_k[k],
                'empirical': summary.counts_by_k[k] / summary.trials,
                **rational_cells('exact', probabilities[k]),
                'z_score': fit.per_cell_z_scores[k],
                **run_columns,
            })
        parameters = {'n': args.n, 'trials': args.trials, 'seed': args.seed, 'bias': bias.p_right}
        return build_envelope('simulate', parameters, rows), EXIT_OK, None

    def runtime(self, args: argparse.Namespace) -> CommandResult:
        reports = runtime_table(args.max_n)
        rows = []
        for report in reports:
            rows.append({
                'n': report.n,
                **rational_cells('closed_form_E', report.closed_form_E),
                **rational_cells('chain_E', report.E_n),
                **rational_cells('delta_E', report.delta_E_n),
                **rational_cells('closed_form_delta_E', report.closed_form_delta_E),
                **optional_rational_cells('corollary_sum', report.corollary_sum),
                'closed_form_applies': report.closed_form_applies,
                'agreement': report.agreement,
            })
        failures = [r for r in reports if not r.agreement]
        first = None
        if failures:
            r = failures[0]
            first = f"runtime n={r.n}: chain E={r.E_n}, closed form={r.closed_form_E}, corollary={r.corollary_sum}"
        envelope = build_envelope('runtime', {'max_n': args.max_n}, rows)
        return envelope, EXIT_VERIFICATION_FAILED if failures else EXIT_OK, first

    def ntoss(self, args: argparse.Namespace) -> CommandResult:
        bias = parse_bias(args.bias)
        if args.max_N < 1:
            raise ValueError(f"--max-N musí být >= 1: {args.max_N}")
        if args.max_N > self.settings.ntoss_cap:
            raise ValueError(f"--max-N={args.max_N} překračuje strop {self.settings.ntoss_cap} (zvyš IDLA_NTOSS_CAP)")
        rows = []
        for N in range(1, args.max_N + 1):
            dist = ntoss_distribution(N, bias, cap=self.settings.ntoss_cap)
            published = PUBLISHED_NTOSS_SCALED.get(N, {}) if bias.is_fair else {}
            for n, p in dist.items():
                scaled = p * 2 ** (N - 1)
                printed = published.get(n)
                rows.append({
                    'N': N,
                    'n': n,
                    **rational_cells('probability', p),
                    'scaled': _scaled_cell(scaled),
                    'published_value': printed,
                    'matches_published': None if printed is None else scaled == printed,
                })
        mismatch = next((r for r in rows if r['matches_published'] is False), None)
        first = None if mismatch is None else f"ntoss N={mismatch['N']}, n={mismatch['n']}: {mismatch['scaled']} != {mismatch['published_value']}"
        envelope = build_envelope('ntoss', {'max_N': args.max_N, 'bias': bias.p_right}, rows)
        return envelope, EXIT_VERIFICATION_FAILED if mismatch else EXIT_OK, first

    def verify(self, args: argparse.Namespace) -> CommandResult:
        results = run_suites(args.suite, self.settings)
        rows = [
            {'suite': r.suite, 'check': r.check, 'passed': r.passed, 'detail': r.detail}
            for r in results
        ]
        failed = [r for r in results if not r.passed]
        first = None if not failed else f"{failed[0].suite}/{failed[0].check}: {failed[0].detail}"
        envelope = build_envelope('verify', {'suite': args.suite}, rows)
        return envelope, EXIT_VERIFICATION_FAILED if failed else EXIT_OK, first

    COMMANDS = {
        'exact-dist': exact_dist,
        'simulate': simulate,
        'runtime': runtime,
        'ntoss': ntoss,
        'verify': verify,
    }

    # ---- Adresář běhu ----

    def _run_path(self) -> Optional[Path]:
        if self.output_dir is None:
            return None
        return run_dir(self.output_dir, self.run_id)

    def write_run(self, command: str, parameters: Dict[str, Any], text: Optional[str],
                  exit_code: int, failure: Optional[str], runtime_s: float, rows: int) -> Optional[Path]:
        """Zapíše data, metrics.json, manifest.json a success.ok / error.json."""
        path = self._run_path()
        if path is None:
            return None
        data_dir = path / "data"
        data_dir.mkdir(parents=True, exist_ok=True)

        manifest = Manifest.new(command=command, run_id=self.run_id)
        manifest.set_parameters(**parameters)

        if text is not None:
            data_name = f"{command}.{self.fmt}"
            with open(data_dir / data_name, 'w', encoding='utf-8') as f:
                f.write(text)
            manifest.set_outputs(primary=f"data/{data_name}")
        else:
            manifest.set_outputs(primary="error.json")

        metrics = {'rows': rows, 'runtime_s': round(runtime_s, 6), 'exit_code': exit_code}
        with open(path / "metrics.json", 'w', encoding='utf-8') as f:
            json.dump(metrics, f, indent=2, ensure_ascii=False)

        manifest.set_counts(rows=rows)
        manifest.merge_metrics(runtime_s=metrics['runtime_s'])

        if exit_code == EXIT_OK:
            manifest.finalize_success()
            (path / "success.ok").touch()
        else:
            error_key = 'verification_failed' if exit_code == EXIT_VERIFICATION_FAILED else 'invalid_input'
            manifest.add_error(unit_id=command, error_key=error_key, message=failure or "")
            manifest.finalize_error()
            error_data = {
                "error": failure,
                "error_key": error_key,
                "exit_code": exit_code,
                "run_id": self.run_id,
            }
            with open(path / "error.json", 'w', encoding='utf-8') as f:
                json.dump(error_data, f, indent=2, ensure_ascii=False)

        manifest.validate()
        manifest.write(path / "manifest.json")
        return path

    # ---- Běh ----

    def run(self, args: argparse.Namespace) -> int:
        """Spustí příkaz, vypíše obálku na stdout a vrátí exit code."""
        command = args.command
        start_time = time.time()
        logger.info("Příkaz start", command=command, run_id=self.run_id)

        try:
            envelope, exit_code, failure = self.COMMANDS[command](self, args)
        except (ValueError, ValidationError) as e:
            print(f"CHYBA: {e}", file=sys.stderr)
            logger.error("Nevalidní vstup", command=command, error=str(e))
            self.write_run(command, {}, None, EXIT_USAGE, str(e), time.time() - start_time, 0)
            return EXIT_USAGE

        text = encode(envelope, self.fmt)
        sys.stdout.write(text)
        sys.stdout.flush()

        if failure:
            print(f"CHYBA: {failure}", file=sys.stderr)
        runtime_s = time.time() - start_time
        self.write_run(command, envelope.parameters, text, exit_code, failure, runtime_s, len(envelope.rows))
        logger.info("Příkaz hotov", command=command, rows=len(envelope.rows),
                    exit_code=exit_code, runtime_s=round(runtime_s, 3))
        return exit_code


def build_parser() -> argparse.ArgumentParser:
    """Argparse s podpříkazy; globální volby má každý podpříkaz."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=FORMATS, default='csv', help='Formát výstupu (default: csv)')
    common.add_argument('--config', help='Cesta ke konfiguračnímu YAML')
    common.add_argument('--output-dir', help='Adresář pro runs/<RUN_ID>/ (volitelné)')
    common.add_argument('--run-id', help='Run ID (jinak vygeneruje ULID)')

    parser = argparse.ArgumentParser(prog='idla', description="Internal DLA v jedné dimenzi")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('exact-dist', parents=[common], help='Přesné rozdělení P(n,k)')
    p.add_argument('--n', type=int, required=True, help='Počet obsazených míst')
    p.add_argument('--bias', help='p_right jako "a/b" (default 1/2)')

    p = sub.add_parser('simulate', parents=[common], help='Monte Carlo simulace')
    p.add_argument('--n', type=int, required=True, help='Počet částic')
    p.add_argument('--trials', type=int, required=True, help='Počet her')
    p.add_argument('--seed', type=int, required=True, help='Master seed (64bit unsigned)')
    p.add_argument('--bias', help='p_right jako "a/b" (default 1/2)')
    p.add_argument('--workers', type=int, help='Počet vláken (neovlivní výsledek)')

    p = sub.add_parser('runtime', parents=[common], help='Očekávaný počet hodů')
    p.add_argument('--max-n', type=int, required=True, help='Největší n')

    p = sub.add_parser('ntoss', parents=[common], help='Rozdělení počtu míst po N hodech')
    p.add_argument('--max-N', dest='max_N', type=int, required=True, help='Největší N')
    p.add_argument('--bias', help='p_right jako "a/b" (default 1/2)')

    p = sub.add_parser('verify', parents=[common], help='Ověření invariantů')
    p.add_argument('--suite', choices=['all', *SUITES], default='all', help='Sada kontrol (default: all)')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Hlavní CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = load_settings(args.config)
    except (ValueError, ValidationError) as e:
        print(f"CHYBA: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logger(settings.log_level, settings.log_file)

    if args.run_id and not is_valid_run_id(args.run_id):
        print(f"CHYBA: --run-id musí být ULID: {args.run_id}", file=sys.stderr)
        return EXIT_USAGE
    run_id = (args.run_id or new_run_id()) if args.output_dir else None
    runner = IdlaRunner(settings, fmt=args.format, output_dir=args.output_dir, run_id=run_id)
    return runner.run(args)


if __name__ == "__main__":
    sys.exit(main())
