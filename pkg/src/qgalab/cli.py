"""Command-line experiment runner.

Every run resolves a config (defaults < optional JSON config file < explicit
flags), validates it before any work starts, derives all randomness from the
single master seed, and emits a canonical report that embeds the resolved
config. Reports are byte-identical across re-runs with the same config and
seed, regardless of --workers; wall-clock timing goes to stderr only.

Exit codes: 0 ok, 2 validation error, 3 runtime error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import ega as ega_mod
from . import games, prfsg, primitives
from .distributions import DistributionId
from .qga import (
    QgaInstance,
    haar_unitary_qga,
    identity_qga,
    iqp_circuit_qga,
    iqp_poly_qga,
    qga_to_json,
    random_circuit_qga,
    state_desc_to_json,
)
from .rng import stream
from .states import sample_haar_state, state_to_json

_DEFAULTS = {
    "seed": 0,
    "trials": 1000,
    "lambda": 3,
    "ell": 3,
    "t": 2,
    "t0": 1,
    "tprime": 3,
    "q": 4,
    "d": None,
    "w": None,
    "depth": None,
    "candidate": "iqp-sparse",
    "id": None,
    "adversary": None,
    "out": None,
    "format": "json",
    "workers": 1,
}

_CANDIDATE_ALIASES = {"1": "random-circuit", "2": "iqp-circuit", "3": "iqp-sparse"}
_CANDIDATES = ("random-circuit", "iqp-circuit", "iqp-sparse", "haar-unitary", "identity")

_GAME_ADVERSARIES = {
    "ow": ("identity", {"omniscient": games.ow_omniscient,
                        "identity": games.ow_identity,
                        "orthogonal": games.ow_orthogonal}),
    "up": ("copy", {"copy": games.up_copy,
                    "omniscient": games.up_omniscient,
                    "haar": games.up_haar,
                    "orthogonal": games.up_orthogonal}),
    "uc": ("echo-junk", {"echo-junk": games.uc_echo_junk,
                         "haar-pad": games.uc_haar_pad,
                         "cloner": games.uc_cloner}),
    "prfsg": ("repeat-query", {"repeat-query": games.prfsg_repeat_query,
                               "random-guess": games.prfsg_random_guess}),
    "upsg": ("replay", {"replay": games.upsg_replay,
                        "haar": games.upsg_haar}),
    "ucfsg": ("echo", {"echo": games.UcfsgEcho(),
                       "haar-pad": games.UcfsgHaarPad()}),
}


class ValidationError(ValueError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--lambda", dest="lam", type=int, default=None)
    common.add_argument("--ell", type=int, default=None)
    common.add_argument("--t", type=int, default=None)
    common.add_argument("--t0", type=int, default=None)
    common.add_argument("--tprime", type=int, default=None)
    common.add_argument("--q", type=int, default=None)
    common.add_argument("--d", type=int, default=None)
    common.add_argument("--w", type=int, default=None)
    common.add_argument("--depth", type=int, default=None)
    common.add_argument("--candidate", type=str, default=None)
    common.add_argument("--id", dest="game_id", type=str, default=None)
    common.add_argument("--adversary", type=str, default=None)
    common.add_argument("--out", type=str, default=None)
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default=None)
    common.add_argument("--config", type=str, default=None)
    common.add_argument("--workers", type=int, default=None)

    parser = argparse.ArgumentParser(prog="qgalab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("sample", "game", "ske-roundtrip", "prfsg-eval", "money-demo", "ega-check"):
        sub.add_parser(name, parents=[common])
    return parser


_FLAG_ATTRS = {
    "seed": "seed", "trials": "trials", "lambda": "lam", "ell": "ell",
    "t": "t", "t0": "t0", "tprime": "tprime", "q": "q", "d": "d", "w": "w",
    "depth": "depth", "candidate": "candidate", "id": "game_id",
    "adversary": "adversary", "out": "out", "format": "fmt", "workers": "workers",
}


def _resolve_config(args: argparse.Namespace) -> dict:
    config = dict(_DEFAULTS)
    if args.config is not None:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise ValidationError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ValidationError("config file must hold a JSON object")
        for key, value in loaded.items():
            if key not in config:
                raise ValidationError(f"unknown config key {key!r}")
            config[key] = value
    for key, attr in _FLAG_ATTRS.items():
        value = getattr(args, attr)
        if value is not None:
            config[key] = value
    return config


def _validate(config: dict, command: str) -> None:
    def need_int(key, low, high=None):
        value = config[key]
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValidationError(f"--{key} must be an integer")
        if value < low or (high is not None and value > high):
            bound = f">= {low}" if high is None else f"in [{low}, {high}]"
            raise ValidationError(f"--{key} must be {bound}, got {value}")

    need_int("seed", 0)
    need_int("trials", 1)
    need_int("lambda", 1, 20)
    need_int("ell", 1)
    need_int("t", 1)
    need_int("t0", 0)
    need_int("q", 1)
    need_int("workers", 1)
    if config["d"] is not None:
        need_int("d", 1)
        if config["d"] > config["lambda"]:
            raise ValidationError("--d cannot exceed --lambda")
    if config["w"] is not None:
        need_int("w", 1)
    if config["depth"] is not None:
        need_int("depth", 0)
    need_int("tprime", 1)

    candidate = str(config["candidate"])
    candidate = _CANDIDATE_ALIASES.get(candidate, candidate)
    if candidate not in _CANDIDATES:
        raise ValidationError(
            f"unknown candidate {config['candidate']!r}; choose from {', '.join(_CANDIDATES)}")
    config["candidate"] = candidate

    if config["format"] not in ("json", "csv"):
        raise ValidationError("--format must be json or csv")
    if config["format"] == "csv" and command != "game":
        raise ValidationError("--format csv is only available for the game command")

    if command == "game":
        if not config["id"]:
            raise ValidationError("game requires --id")
        gid = config["id"]
        if gid in _GAME_ADVERSARIES:
            default, table = _GAME_ADVERSARIES[gid]
            adversary = config["adversary"] or default
            if adversary not in table:
                raise ValidationError(
                    f"unknown adversary {adversary!r} for game {gid!r}; "
                    f"choose from {', '.join(sorted(table))}")
            config["adversary"] = adversary
        elif gid == "attack-iqp-pru":
            if config["candidate"] not in ("iqp-circuit", "iqp-sparse"):
                raise ValidationError("attack-iqp-pru targets iqp-circuit or iqp-sparse")
        elif "-vs-" in gid:
            left, _, right = gid.partition("-vs-")
            for side in (left, right):
                try:
                    DistributionId(side)
                except ValueError:
                    raise ValidationError(f"unknown distribution {side!r} in game id {gid!r}")
            config["adversary"] = config["adversary"] or "random-guess"
            if config["adversary"] not in ("random-guess",):
                raise ValidationError(f"unknown distinguisher {config['adversary']!r}")
        else:
            raise ValidationError(f"unknown game id {gid!r}")
        if gid in ("uc", "ucfsg"):
            if config["tprime"] <= config["t"]:
                raise ValidationError("--tprime must exceed --t")
            if config["tprime"] * config["lambda"] > 20:
                raise ValidationError("--tprime registers exceed the 20-qubit cap")

    if command in ("prfsg-eval",) and config["ell"] > 8:
        raise ValidationError("--ell above 8 would enumerate too many inputs")


def _build_instance(config: dict) -> QgaInstance:
    lam = config["lambda"]
    candidate = config["candidate"]
    if candidate == "random-circuit":
        depth = config["depth"] if config["depth"] is not None else 4
        return random_circuit_qga(lam, depth)
    if candidate == "iqp-circuit":
        return iqp_circuit_qga(lam, config["depth"])
    if candidate == "iqp-sparse":
        d = config["d"] if config["d"] is not None else 3
        return iqp_poly_qga(lam, d, config["w"])
    if candidate == "haar-unitary":
        return haar_unitary_qga(lam)
    return identity_qga(lam)


def _public_config(config: dict) -> dict:
    # out and workers are execution details; reports must not depend on them
    return {k: v for k, v in config.items() if k not in ("out", "workers")}


def _canonical_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_sample(config: dict) -> str:
    instance = _build_instance(config)
    rng = stream(config["seed"], "sample")
    g = instance.sample_g(rng)
    s = instance.sample_s()
    report = {
        "command": "sample",
        "config": _public_config(config),
        "family": {"name": instance.name, "num_qubits": instance.num_qubits,
                   "params": instance.params},
        "group_element": qga_to_json(g),
        "base_state": state_desc_to_json(s),
    }
    return _canonical_json(report)


def _run_game(config: dict):
    gid = config["id"]
    record = config["format"] == "csv"
    trials, seed, workers = config["trials"], config["seed"], config["workers"]

    if gid == "attack-iqp-pru":
        candidate = 2 if config["candidate"] == "iqp-circuit" else 3
        degree = config["d"] if config["d"] is not None else 3
        return games.attack_iqp_fixed_point(
            config["lambda"], candidate, trials, seed,
            degree_bound=degree, term_bound=config["w"],
            num_gates=config["depth"], workers=workers)

    instance = _build_instance(config)
    if gid == "ow":
        adv = _GAME_ADVERSARIES["ow"][1][config["adversary"]]
        return games.run_ow_game(instance, adv, config["t"], trials, seed,
                                 workers=workers, record=record)
    if gid == "up":
        adv = _GAME_ADVERSARIES["up"][1][config["adversary"]]
        return games.run_up_game(instance, adv, config["t"], trials, seed,
                                 workers=workers, record=record)
    if gid == "uc":
        adv = _GAME_ADVERSARIES["uc"][1][config["adversary"]]
        return games.run_uc_game(instance, adv, config["t0"], config["t"],
                                 config["tprime"], trials, seed,
                                 workers=workers, record=record)
    if gid == "prfsg":
        adv = _GAME_ADVERSARIES["prfsg"][1][config["adversary"]]
        factory = games.standard_prfsg_factory(instance, config["ell"])
        return games.run_prfsg_game(factory, adv, trials, seed,
                                    workers=workers, record=record)
    if gid == "upsg":
        adv = _GAME_ADVERSARIES["upsg"][1][config["adversary"]]
        factory = _real_oracle_factory(instance, config["ell"])
        return games.run_upsg_game(factory, adv, trials, seed,
                                   workers=workers, record=record)
    if gid == "ucfsg":
        adv = _GAME_ADVERSARIES["ucfsg"][1][config["adversary"]]
        factory = _real_oracle_factory(instance, config["ell"])
        return games.run_ucfsg_game(factory, adv, config["t"], config["tprime"],
                                    trials, seed, workers=workers, record=record)

    left, _, right = gid.partition("-vs-")
    return games.run_distinguishing_game(
        (left, right), instance, games.dist_random_guess,
        config["t"], config["q"], trials, seed, workers=workers, record=record)


def _real_oracle_factory(instance: QgaInstance, ell: int):
    def factory(rng):
        return prfsg.RealOracle(prfsg.keygen(instance, ell, rng))

    return factory


def _cmd_game(config: dict) -> str:
    result = _run_game(config)
    if config["format"] == "csv":
        outcomes = (result.detail or {}).get("outcomes")
        if outcomes is None:
            raise ValidationError(f"game {config['id']!r} does not record per-trial outcomes")
        lines = ["trial,outcome"]
        lines += [f"{i},{int(o)}" for i, o in enumerate(outcomes)]
        return "\n".join(lines) + "\n"
    report = games.game_report(result, config["id"], _public_config(config))
    return _canonical_json(report)


def _cmd_ske_roundtrip(config: dict) -> str:
    instance = _build_instance(config)
    trials, seed = config["trials"], config["seed"]
    t, ell = config["t"], config["ell"]

    zero_ok = 0
    ones_msg_ok = 0
    ones_bit_ok = 0
    for i in range(trials):
        rng = stream(seed, "ske-roundtrip", i)
        key = primitives.ske_multi_keygen(instance, t, ell, rng)
        cts0 = primitives.ske_multi_enc(key, [0] * ell, rng)
        if primitives.ske_multi_dec(key, cts0, rng) == (0,) * ell:
            zero_ok += 1
        cts1 = primitives.ske_multi_enc(key, [1] * ell, rng)
        dec1 = primitives.ske_multi_dec(key, cts1, rng)
        ones_bit_ok += sum(dec1)
        ones_msg_ok += int(dec1 == (1,) * ell)

    def block(successes: int, n: int) -> dict:
        est, (lo, hi) = games.estimate(successes, n)
        return {"trials": n, "successes": successes, "estimate": est, "ci": [lo, hi]}

    report = {
        "command": "ske-roundtrip",
        "config": _public_config(config),
        "seed": seed,
        "zero_message": block(zero_ok, trials),
        "ones_message": block(ones_msg_ok, trials),
        "ones_per_bit": block(ones_bit_ok, trials * ell),
    }
    return _canonical_json(report)


def _cmd_prfsg_eval(config: dict) -> str:
    instance = _build_instance(config)
    ell = config["ell"]
    rng = stream(config["seed"], "prfsg-eval")
    key = prfsg.keygen(instance, ell, rng)
    states = {}
    for value in range(2**ell):
        x = format(value, f"0{ell}b")
        states[x] = state_to_json(prfsg.state_gen(key, x))
    report = {
        "command": "prfsg-eval",
        "config": _public_config(config),
        "seed": config["seed"],
        "key": prfsg.key_to_json(key),
        "states": states,
    }
    return _canonical_json(report)


def _cmd_money_demo(config: dict) -> str:
    instance = _build_instance(config)
    trials, seed = config["trials"], config["seed"]
    lam = instance.num_qubits

    honest_ok = 0
    forged_ok = 0
    for i in range(trials):
        rng = stream(seed, "money-demo", i)
        key = primitives.money_keygen(instance, rng)
        note = primitives.money_mint(key)
        honest_ok += int(primitives.money_verify(key, note.note, rng))
        forged_ok += int(primitives.money_verify(key, sample_haar_state(lam, rng), rng))

    def block(successes: int, n: int) -> dict:
        est, (lo, hi) = games.estimate(successes, n)
        return {"trials": n, "successes": successes, "estimate": est, "ci": [lo, hi]}

    report = {
        "command": "money-demo",
        "config": _public_config(config),
        "seed": seed,
        "honest_accept": block(honest_ok, trials),
        "counterfeit_accept": block(forged_ok, trials),
        "counterfeit_expected": 0.5**lam,
    }
    return _canonical_json(report)


def _cmd_ega_check(config: dict) -> str:
    action = ega_mod.instantiate_exp_action()
    report = ega_mod.check_properties(action)
    rng = stream(config["seed"], "ega-check")
    uniformity = ega_mod.check_orbit_uniformity(action, config["trials"], rng)

    identity_ok = all(action.act(action.identity, s) == s for s in action.set_elements)
    compatible = all(
        action.act(action.op(a, b), s) == action.act(a, action.act(b, s))
        for a in action.group_elements
        for b in action.group_elements
        for s in action.set_elements
    )
    payload = {
        "command": "ega-check",
        "config": _public_config(config),
        "seed": config["seed"],
        "action": json.loads(ega_mod.exp_action_to_json(action)),
        "axioms": {"identity": identity_ok, "compatibility": compatible},
        "properties": {
            "transitive": report.transitive,
            "free": report.free,
            "faithful": report.faithful,
            "regular": report.regular,
        },
        "orbit_uniformity": {
            "statistic": uniformity.statistic,
            "p_value": uniformity.p_value,
            "trials": uniformity.trials,
            "num_cells": uniformity.num_cells,
        },
    }
    return _canonical_json(payload)


_COMMANDS = {
    "sample": _cmd_sample,
    "game": _cmd_game,
    "ske-roundtrip": _cmd_ske_roundtrip,
    "prfsg-eval": _cmd_prfsg_eval,
    "money-demo": _cmd_money_demo,
    "ega-check": _cmd_ega_check,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        config = _resolve_config(args)
        _validate(config, args.command)
        text = _COMMANDS[args.command](config)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"error: {exc}", file=sys.stderr)
        return 3

    try:
        if config["out"]:
            Path(config["out"]).write_text(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    elapsed_ms = (time.perf_counter() - started) * 1000.0
    print(f"elapsed_ms={elapsed_ms:.1f}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
