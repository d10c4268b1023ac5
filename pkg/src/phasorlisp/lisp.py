"""A Lisp whose every value is a complex phasor hypervector.

Programs are parsed to S-expressions, encoded into the phasor algebra
(integers as residue codes plus a type tag, symbols as interned random
vectors, lists as tagged role-filler chunks behind pointer symbols), and
evaluated entirely over vectors: the evaluator recovers structure by
dereferencing pointers, unbinding roles, and cleaning up through memory.

Special forms: quote, cond, lambda, define.  Primitives: cons, car, cdr,
atom?, eq?, int?, and binary +, -, *, /.  Arithmetic is carry-free
modular arithmetic over the configured moduli; conditionals and equality
are similarity tests against the threshold theta.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import IO, Iterator

import numpy as np

from .errors import (
    ArityError,
    ConfigError,
    DanglingPointerError,
    DecodeError,
    EvalError,
    LispTypeError,
    MemoryEmptyError,
    NoMatchError,
    NotApplicableError,
    SessionIOError,
    UnboundSymbolError,
)
from .fhrr import bind, new_rng, normalize, random_symbol, similarity, unbind
from .memory import CleanupMemory, Environment
from .reader import Atom, IntLiteral, ListExpr, SExpr, parse_program
from .residue import (
    CODEBOOK_MAGIC,
    ModuliSet,
    ResidueCodebook,
    add_bind,
    decode_residue,
    load_codebook,
    make_codebook,
    mod_inverse,
    mul_bind,
    save_codebook,
)

__all__ = ["Config", "EncodedValue", "Resolved", "Session", "SPECIAL_FORMS", "PRIMITIVES"]

SPECIAL_FORMS = ("quote", "cond", "lambda", "define")

#: primitive name -> argument count (all primitives are fixed-arity)
PRIMITIVES = {
    "cons": 2,
    "car": 1,
    "cdr": 1,
    "atom?": 1,
    "eq?": 2,
    "int?": 1,
    "+": 2,
    "-": 2,
    "*": 2,
    "/": 2,
}

_ROLE_NAMES = ("#head", "#tail", "#params", "#body", "#env")
_TAG_NAMES = ("#cons", "#lambda")


@dataclass(frozen=True)
class Config:
    """Session parameters.

    ``decode`` selects the integer readout: ``resonator`` factorizes per
    modulus and reassembles via the CRT, ``exhaustive`` scans the whole
    codebook.  ``floor`` is the shared confidence minimum for decoding
    and memory recall.
    """

    dim: int = 1000
    moduli: tuple[int, ...] = (3, 5, 7)
    theta: float = 0.2
    seed: int = 42
    decode: str = "resonator"
    floor: float = 0.1

    def __post_init__(self) -> None:
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if self.dim < 1:
            raise ConfigError(f"dimension must be >= 1, got {self.dim}")
        if not 0.0 < self.theta < 1.0:
            raise ConfigError(f"theta must lie in (0, 1), got {self.theta}")
        if self.decode not in ("exhaustive", "resonator"):
            raise ConfigError(f"unknown decode method {self.decode!r}")
        if not 0.0 <= self.floor < 1.0:
            raise ConfigError(f"floor must lie in [0, 1), got {self.floor}")


@dataclass(frozen=True)
class Resolved:
    """A vector snapped back to what the session knows it to be.

    ``kind`` is one of int, bool, nil, symbol, pointer, env, role, or
    unknown.  ``vector`` is the exact stored (or re-encoded) form, free
    of the noise the query may have carried.
    """

    kind: str
    name: str | None
    value: int | None
    vector: np.ndarray


@dataclass(frozen=True)
class EncodedValue:
    """Public value wrapper: the vector plus a diagnostic kind hint."""

    vector: np.ndarray
    hint: str = "symbol"


def _raw(v: "EncodedValue | np.ndarray") -> np.ndarray:
    return v.vector if isinstance(v, EncodedValue) else v


class Session:
    """One interpreter world: codebook, memory, environments, evaluator.

    Construction is deterministic in the seed: the codebook, the boolean
    and nil constants, the chunk roles and tags, and the global scope
    handle are minted in a fixed order.  All evaluation happens over
    vectors; host Python holds only names, environment frames, and the
    chunk inventory.
    """

    def __init__(self, config: Config | None = None) -> None:
        self.config = config if config is not None else Config()
        self.moduli = ModuliSet(self.config.moduli)
        self.rng = new_rng(self.config.seed)
        self.codebook = make_codebook(self.moduli, self.config.dim, self.rng)
        self.memory = CleanupMemory(self.config.dim, floor=self.config.floor)
        self.environments: dict[str, Environment] = {}
        self.display_raw = False
        self._cell_n = 0
        self._closure_n = 0
        self._env_n = 0
        self._bootstrap()

    # -- construction ---------------------------------------------------

    def _bootstrap(self) -> None:
        dim = self.config.dim
        self.memory.add("int", self.codebook.tag)
        for name in ("t", "f", "nil"):
            self.memory.add(name, random_symbol(self.rng, dim))
        for name in _ROLE_NAMES + _TAG_NAMES:
            self.memory.add(name, random_symbol(self.rng, dim), kind="role")
        self.global_env = Environment(dim)
        self._register_env(self.global_env)

    def _register_env(self, env: Environment) -> str:
        name = f"env-{self._env_n}"
        self._env_n += 1
        self.memory.add(name, random_symbol(self.rng, self.config.dim), kind="env")
        self.environments[name] = env
        env.handle = name
        return name

    def _handle_for(self, env: Environment) -> str:
        if env.handle is None:
            self._register_env(env)
        return env.handle

    # -- convenient vector accessors ------------------------------------

    @property
    def int_tag(self) -> np.ndarray:
        return self.codebook.tag

    def symbol(self, name: str) -> np.ndarray:
        """Interned vector for ``name``, minting a fresh one if unknown."""
        if name not in self.memory:
            self.memory.add(name, random_symbol(self.rng, self.config.dim))
        return self.memory.vector(name)

    def _role(self, name: str) -> np.ndarray:
        return self.memory.vector(name)

    # -- encoding -------------------------------------------------------

    def encode_int(self, x: int) -> np.ndarray:
        """Residue code of x with the integer type tag superposed."""
        from .residue import encode_residue

        return encode_residue(self.codebook, x) + self.int_tag

    def cons(
        self,
        head: "EncodedValue | np.ndarray",
        tail: "EncodedValue | np.ndarray",
    ) -> np.ndarray:
        """Store a pair chunk and return its fresh pointer symbol."""
        composite = (
            self._role("#cons")
            + bind(self._role("#head"), _raw(head))
            + bind(self._role("#tail"), _raw(tail))
        )
        name = f"cell-{self._cell_n}"
        self._cell_n += 1
        pointer = random_symbol(self.rng, self.config.dim)
        self.memory.add_chunk(name, pointer, composite)
        return pointer

    def _encode_data(self, expr: SExpr) -> np.ndarray:
        if isinstance(expr, IntLiteral):
            return self.encode_int(expr.value)
        if isinstance(expr, Atom):
            return self.symbol(expr.name)
        if isinstance(expr, ListExpr):
            v = self.symbol("nil")
            for item in reversed(expr.items):
                v = self.cons(self._encode_data(item), v)
            return v
        raise EvalError(f"cannot encode {expr!r}")

    def encode(self, expr: SExpr) -> EncodedValue:
        """Encode an AST as data: the vector form quote would return."""
        v = self._encode_data(expr)
        return EncodedValue(v, self._kind_hint(v))

    def _kind_hint(self, v: np.ndarray) -> str:
        r = self._classify(v)
        if r.kind == "int":
            return "integer"
        if r.kind == "bool":
            return "boolean"
        if r.kind == "pointer":
            chunk = self.memory.chunk(r.name)
            if similarity(chunk, self._role("#lambda")) > self.config.theta:
                return "closure"
            return "cons"
        if r.kind == "nil":
            return "nil"
        return "symbol"

    # -- recovery -------------------------------------------------------

    def _classify(self, v: np.ndarray) -> Resolved:
        """Like resolve, but never decodes the integer value."""
        if similarity(v, self.int_tag) > self.config.theta:
            return Resolved("int", None, None, v)
        try:
            hit = self.memory.recall(v)
        except (MemoryEmptyError, NoMatchError):
            return Resolved("unknown", None, None, v)
        kind = hit.kind
        if kind == "symbol":
            if hit.name in ("t", "f"):
                kind = "bool"
            elif hit.name == "nil":
                kind = "nil"
        return Resolved(kind, hit.name, None, hit.vector)

    def resolve(self, v: "EncodedValue | np.ndarray") -> Resolved:
        """Snap a possibly noisy vector to its exact known form.

        Integer-tagged vectors are decoded and re-encoded, so one cleanup
        pass removes all accumulated unbinding noise.  A tagged vector
        that fails to decode falls through to symbol recall; a vector
        matching nothing is returned as kind ``unknown``.
        """
        v = _raw(v)
        s = similarity(v, self.int_tag)
        if s > self.config.theta:
            try:
                x = decode_residue(
                    self.codebook,
                    v - self.int_tag,
                    method=self.config.decode,
                    floor=self.config.floor,
                )
                return Resolved("int", None, x, self.encode_int(x))
            except DecodeError:
                pass
        try:
            hit = self.memory.recall(v)
        except (MemoryEmptyError, NoMatchError):
            return Resolved("unknown", None, None, v)
        kind = hit.kind
        if kind == "symbol":
            if hit.name in ("t", "f"):
                kind = "bool"
            elif hit.name == "nil":
                kind = "nil"
        return Resolved(kind, hit.name, None, hit.vector)

    def _chunk_kind(self, chunk: np.ndarray) -> str:
        if similarity(chunk, self._role("#cons")) > self.config.theta:
            return "cons"
        if similarity(chunk, self._role("#lambda")) > self.config.theta:
            return "lambda"
        return "unknown"

    def _unbind_role(self, chunk: np.ndarray, role: str) -> Resolved:
        return self.resolve(unbind(chunk, self._role(role)))

    def _chain_items(self, r: Resolved) -> list[np.ndarray]:
        """Vectors of a proper list's elements, cleaned at every level."""
        items: list[np.ndarray] = []
        while True:
            if r.kind == "nil":
                return items
            if r.kind == "pointer":
                chunk = self.memory.chunk(r.name)
                if self._chunk_kind(chunk) == "cons":
                    items.append(self._unbind_role(chunk, "#head").vector)
                    r = self._unbind_role(chunk, "#tail")
                    continue
            raise EvalError("expected a proper list")

    # -- evaluation -----------------------------------------------------

    def eval_expr(self, expr: SExpr) -> EncodedValue:
        """Encode and evaluate one top-level form in the global scope."""
        v = self.eval_vec(self._encode_data(expr), self.global_env)
        return EncodedValue(v, self._kind_hint(v))

    def eval_source(self, source: str) -> Iterator[str]:
        """Evaluate every form in ``source``, yielding printed results."""
        for expr in parse_program(source):
            yield self.print_value(self.eval_expr(expr))

    def eval_vec(self, v: np.ndarray, env: Environment) -> np.ndarray:
        r = self.resolve(v)
        if r.kind in ("int", "bool", "nil"):
            return r.vector
        if r.kind == "symbol":
            return env.lookup(r.name)
        if r.kind == "pointer":
            chunk = self.memory.chunk(r.name)
            ck = self._chunk_kind(chunk)
            if ck == "lambda":
                return r.vector
            if ck == "cons":
                return self._eval_combination(chunk, env)
            raise NotApplicableError(f"cannot evaluate chunk {r.name}")
        if r.kind in ("env", "role"):
            raise EvalError(f"cannot evaluate internal symbol {r.name!r}")
        raise EvalError("cannot evaluate an unrecognized vector")

    def _eval_combination(self, chunk: np.ndarray, env: Environment) -> np.ndarray:
        head = self._unbind_role(chunk, "#head")
        rest = self._chain_items(self._unbind_role(chunk, "#tail"))
        if head.kind == "symbol":
            name = head.name
            if name in SPECIAL_FORMS:
                return self._special_form(name, rest, env)
            try:
                operator = env.lookup(name)
            except UnboundSymbolError:
                arity = PRIMITIVES.get(name)
                if arity is None:
                    raise
                if len(rest) != arity:
                    raise ArityError(
                        f"{name} expects {arity} arguments, got {len(rest)}"
                    )
                args = [self.eval_vec(a, env) for a in rest]
                return self._apply_primitive(name, args)
        else:
            operator = self.eval_vec(head.vector, env)
        args = [self.eval_vec(a, env) for a in rest]
        return self.apply(operator, args)

    def _special_form(
        self, name: str, rest: list[np.ndarray], env: Environment
    ) -> np.ndarray:
        if name == "quote":
            if len(rest) != 1:
                raise ArityError(f"quote expects 1 argument, got {len(rest)}")
            return rest[0]
        if name == "lambda":
            if len(rest) != 2:
                raise ArityError(
                    f"lambda expects parameters and a body, got {len(rest)} parts"
                )
            return self._make_closure(rest[0], rest[1], env)
        if name == "define":
            if len(rest) != 2:
                raise ArityError(f"define expects 2 arguments, got {len(rest)}")
            target = self.resolve(rest[0])
            if target.kind in ("bool", "nil"):
                raise EvalError(
                    f"cannot redefine the constant {target.name!r}"
                )
            if target.kind != "symbol":
                raise EvalError("define expects a symbol to bind")
            env.define(target.name, self.eval_vec(rest[1], env))
            return target.vector
        # cond: first clause whose test is similar to t selects the result
        for clause_v in rest:
            clause = self._chain_items(self.resolve(clause_v))
            if len(clause) != 2:
                raise EvalError("cond clause needs exactly a test and a result")
            test_val = self.eval_vec(clause[0], env)
            if similarity(test_val, self.symbol("t")) > self.config.theta:
                return self.eval_vec(clause[1], env)
        return self.symbol("nil")

    def _param_names(self, params_v: np.ndarray) -> list[str]:
        r = self.resolve(params_v)
        if r.kind == "nil":
            return []
        names = []
        for item in self._chain_items(r):
            p = self.resolve(item)
            if p.kind in ("bool", "nil"):
                raise EvalError(
                    f"{p.name!r} is a reserved constant, not a parameter name"
                )
            if p.kind != "symbol":
                raise EvalError("parameter list must hold symbols")
            names.append(p.name)
        return names

    def _make_closure(
        self, params_v: np.ndarray, body_v: np.ndarray, env: Environment
    ) -> np.ndarray:
        self._param_names(params_v)  # reject malformed parameter lists now
        handle = self._handle_for(env)
        composite = (
            self._role("#lambda")
            + bind(self._role("#params"), params_v)
            + bind(self._role("#body"), body_v)
            + bind(self._role("#env"), self.memory.vector(handle))
        )
        name = f"closure-{self._closure_n}"
        self._closure_n += 1
        pointer = random_symbol(self.rng, self.config.dim)
        self.memory.add_chunk(name, pointer, composite)
        return pointer

    def apply(
        self,
        operator: "EncodedValue | np.ndarray",
        args: list[np.ndarray],
    ) -> np.ndarray:
        """Apply a closure value to already-evaluated arguments."""
        r = self.resolve(operator)
        if r.kind == "pointer":
            chunk = self.memory.chunk(r.name)
            if self._chunk_kind(chunk) == "lambda":
                return self._apply_closure(chunk, args)
        raise NotApplicableError(f"cannot apply a value of kind {r.kind}")

    def _apply_closure(self, chunk: np.ndarray, args: list[np.ndarray]) -> np.ndarray:
        params = self._param_names(self._unbind_role(chunk, "#params").vector)
        body = self._unbind_role(chunk, "#body").vector
        env_ref = self._unbind_role(chunk, "#env")
        if env_ref.kind != "env" or env_ref.name not in self.environments:
            raise DanglingPointerError(
                "closure environment is not present in this session"
            )
        if len(args) != len(params):
            raise ArityError(
                f"closure expects {len(params)} arguments, got {len(args)}"
            )
        frame = self.environments[env_ref.name].child()
        for pname, arg in zip(params, args):
            frame.define(pname, arg)
        return self.eval_vec(body, frame)

    # -- primitives -----------------------------------------------------

    def _apply_primitive(self, name: str, args: list[np.ndarray]) -> np.ndarray:
        if name == "cons":
            return self.cons(args[0], args[1])
        if name == "car":
            return self._select(args[0], "#head", "car")
        if name == "cdr":
            return self._select(args[0], "#tail", "cdr")
        if name == "atom?":
            return self._bool(not self._is_pair(args[0]))
        if name == "eq?":
            return self._bool(self._eq(args[0], args[1]))
        if name == "int?":
            return self.prim_int_test(args[0])
        if name == "+":
            return self.prim_add(args[0], args[1])
        if name == "-":
            return self.prim_sub(args[0], args[1])
        if name == "*":
            return self.prim_mul(args[0], args[1])
        if name == "/":
            return self.prim_div(args[0], args[1])
        raise EvalError(f"unknown primitive {name!r}")

    def _bool(self, flag: bool) -> np.ndarray:
        return self.symbol("t") if flag else self.symbol("f")

    def _eq(self, u: np.ndarray, v: np.ndarray) -> bool:
        ru = self.resolve(u)
        rv = self.resolve(v)
        if ru.kind == "int" and rv.kind == "int":
            # The shared int tag alone puts any two integers above the
            # threshold, so integers are compared by their tag-stripped
            # codes instead.
            u = ru.vector - self.int_tag
            v = rv.vector - self.int_tag
        return similarity(u, v) > self.config.theta

    def _is_pair(self, v: np.ndarray) -> bool:
        r = self.resolve(v)
        return (
            r.kind == "pointer"
            and self._chunk_kind(self.memory.chunk(r.name)) == "cons"
        )

    def _select(self, v: np.ndarray, role: str, who: str) -> np.ndarray:
        r = self.resolve(v)
        if r.kind != "pointer":
            raise LispTypeError(f"{who} expects a pair")
        chunk = self.memory.chunk(r.name)
        if self._chunk_kind(chunk) != "cons":
            raise LispTypeError(f"{who} expects a pair")
        return self._unbind_role(chunk, role).vector

    def car(self, v: "EncodedValue | np.ndarray") -> np.ndarray:
        return self._select(_raw(v), "#head", "car")

    def cdr(self, v: "EncodedValue | np.ndarray") -> np.ndarray:
        return self._select(_raw(v), "#tail", "cdr")

    def is_nil(self, v: "EncodedValue | np.ndarray") -> bool:
        return self.resolve(v).kind == "nil"

    def force_decode(self, v: "EncodedValue | np.ndarray") -> tuple[int, float]:
        """Best integer reading of a vector and its confidence.

        Ignores the type tag test and the confidence floor; meant for
        inspecting values that print as something other than an integer.
        """
        stripped = _raw(v) - self.int_tag
        sims = (self.codebook.candidates().conj() @ stripped).real / self.config.dim
        x = int(np.argmax(sims))
        return x, float(sims[x])

    def prim_int_test(self, v: "EncodedValue | np.ndarray") -> np.ndarray:
        """Integer discriminator over similarity to the type tag.

        Superposes t weighted by sim(v, int) and f weighted by
        (2*theta - sim(v, int)), then cleans the blend up through memory;
        above-threshold similarity makes t dominate, anything else f.
        """
        v = _raw(v)
        s = similarity(v, self.int_tag)
        blend = s * self.symbol("t") + (2.0 * self.config.theta - s) * self.symbol("f")
        return self.memory.recall(blend).vector

    def _require_int(self, v: "EncodedValue | np.ndarray", who: str) -> np.ndarray:
        """Strip the integer tag, renormalizing to restore phasor form."""
        v = _raw(v)
        if similarity(v, self.int_tag) <= self.config.theta:
            raise LispTypeError(f"{who} expects integer operands")
        return normalize(v - self.int_tag)

    def prim_add(self, u, v) -> np.ndarray:
        a = self._require_int(u, "+")
        b = self._require_int(v, "+")
        return add_bind(a, b) + self.int_tag

    def prim_sub(self, u, v) -> np.ndarray:
        a = self._require_int(u, "-")
        b = self._require_int(v, "-")
        return add_bind(a, np.conj(b)) + self.int_tag

    def prim_mul(self, u, v) -> np.ndarray:
        a = self._require_int(u, "*")
        b = self._require_int(v, "*")
        return mul_bind(self.codebook, a, b, method=self.config.decode) + self.int_tag

    def prim_div(self, u, v) -> np.ndarray:
        a = self._require_int(u, "/")
        b = self._require_int(v, "/")
        inv = mod_inverse(self.codebook, b, method=self.config.decode)
        return mul_bind(self.codebook, a, inv, method=self.config.decode) + self.int_tag

    # -- printing -------------------------------------------------------

    def display_int(self, x: int) -> int:
        """Map a raw residue value into the symmetric display window."""
        if self.display_raw:
            return x
        r = self.moduli.range
        return x if x < (r + 1) // 2 else x - r

    def print_value(self, v: "EncodedValue | np.ndarray") -> str:
        """Human-readable rendering of a value vector."""
        return self._format(self.resolve(v))

    def _format(self, r: Resolved) -> str:
        if r.kind == "int":
            return str(self.display_int(r.value))
        if r.kind in ("bool", "nil", "symbol", "env", "role"):
            return r.name
        if r.kind == "pointer":
            chunk = self.memory.chunk(r.name)
            ck = self._chunk_kind(chunk)
            if ck == "lambda":
                return "#<lambda>"
            if ck == "cons":
                return self._format_chain(r)
            return f"#<chunk {r.name}>"
        try:
            best = self.memory.recall(r.vector, floor=-1.0).similarity
        except MemoryEmptyError:
            best = 0.0
        return f"#<vector sim={best:.3f}>"

    def _format_chain(self, r: Resolved) -> str:
        parts: list[str] = []
        while True:
            chunk = self.memory.chunk(r.name)
            parts.append(self._format(self._unbind_role(chunk, "#head")))
            tail = self._unbind_role(chunk, "#tail")
            if tail.kind == "nil":
                return "(" + " ".join(parts) + ")"
            if tail.kind == "pointer" and self._chunk_kind(
                self.memory.chunk(tail.name)
            ) == "cons":
                r = tail
                continue
            return "(" + " ".join(parts) + " . " + self._format(tail) + ")"

    # -- persistence ----------------------------------------------------

    def save(self, dest: IO[bytes] | str | Path) -> None:
        """Dump codebook and memory so the session can be reopened.

        The payload after the codebook block is a flat inventory of
        length-prefixed UTF-8 names and interleaved re/im float64
        vectors; entry kinds, chunk payloads, and environment structure
        ride in name prefixes.
        """
        if isinstance(dest, (str, Path)):
            with open(dest, "wb") as fh:
                self.save(fh)
            return
        for env in list(self.environments.values()):
            walk = env.parent
            while walk is not None:
                self._handle_for(walk)
                walk = walk.parent
        entries: list[tuple[str, np.ndarray]] = []
        for name in self.memory.names():
            entries.append(
                (f"{self.memory.kind(name)}:{name}", self.memory.vector(name))
            )
        for name in self.memory.names(kind="pointer"):
            entries.append((f"chunk:{name}", self.memory.chunk(name)))
        for handle, env in self.environments.items():
            if env.parent is not None:
                parent = env.parent.handle
                entries.append(
                    (f"parent:{handle}:{parent}", self.memory.vector(parent))
                )
            for bname in env.frame.names():
                entries.append(
                    (f"bind:{handle}:{bname}", env.frame.vector(bname))
                )
        save_codebook(self.codebook, dest)
        dest.write(struct.pack("<I", len(entries)))
        for name, vec in entries:
            raw = name.encode("utf-8")
            dest.write(struct.pack("<I", len(raw)))
            dest.write(raw)
            buf = np.empty(2 * self.config.dim, dtype="<f8")
            buf[0::2] = vec.real
            buf[1::2] = vec.imag
            dest.write(buf.tobytes())

    @classmethod
    def restore(
        cls, src: IO[bytes] | str | Path, config: Config | None = None
    ) -> "Session":
        """Reopen a saved session.

        The file's dimension and moduli override the passed config; the
        generator is reseeded on a stream derived from the seed and the
        restored entry count so freshly minted symbols cannot replay
        vectors the saved session already used.
        """
        if isinstance(src, (str, Path)):
            with open(src, "rb") as fh:
                return cls.restore(fh, config)
        codebook = load_codebook(src)
        base = config if config is not None else Config()
        cfg = replace(
            base, dim=codebook.dim, moduli=tuple(codebook.moduli)
        )
        sess = cls.__new__(cls)
        sess.config = cfg
        sess.moduli = codebook.moduli
        sess.codebook = codebook
        sess.memory = CleanupMemory(cfg.dim, floor=cfg.floor)
        sess.environments = {}
        sess.display_raw = False
        sess._cell_n = 0
        sess._closure_n = 0
        sess._env_n = 0
        (count,) = struct.unpack("<I", src.read(4))
        chunks: list[tuple[str, np.ndarray]] = []
        parents: list[tuple[str, str]] = []
        binds: list[tuple[str, str, np.ndarray]] = []
        for _ in range(count):
            (name_len,) = struct.unpack("<I", src.read(4))
            name = src.read(name_len).decode("utf-8")
            raw = np.frombuffer(src.read(16 * cfg.dim), dtype="<f8")
            if raw.size != 2 * cfg.dim:
                raise SessionIOError("truncated session payload")
            vec = np.array(raw[0::2] + 1j * raw[1::2])
            prefix, _, rest = name.partition(":")
            if prefix in ("symbol", "pointer", "role", "env"):
                sess.memory.add(rest, vec, kind=prefix)
                sess._note_counter(rest)
            elif prefix == "chunk":
                chunks.append((rest, vec))
            elif prefix == "parent":
                handle, _, parent = rest.partition(":")
                parents.append((handle, parent))
            elif prefix == "bind":
                handle, _, bname = rest.partition(":")
                binds.append((handle, bname, vec))
            else:
                raise SessionIOError(f"unknown session entry {name!r}")
        for name, composite in chunks:
            sess.memory.attach_chunk(name, composite)
        for handle in sess.memory.names(kind="env"):
            env = Environment(cfg.dim)
            env.handle = handle
            sess.environments[handle] = env
        for handle, parent in parents:
            sess.environments[handle].parent = sess.environments[parent]
        for handle, bname, vec in binds:
            sess.environments[handle].frame.add(bname, vec, replace=True)
        if "env-0" not in sess.environments:
            raise SessionIOError("session file lacks the global scope")
        sess.global_env = sess.environments["env-0"]
        sess.rng = np.random.default_rng((cfg.seed, count))
        return sess

    def _note_counter(self, name: str) -> None:
        for prefix, attr in (
            ("cell-", "_cell_n"),
            ("closure-", "_closure_n"),
            ("env-", "_env_n"),
        ):
            if name.startswith(prefix) and name[len(prefix):].isdigit():
                n = int(name[len(prefix):]) + 1
                if n > getattr(self, attr):
                    setattr(self, attr, n)
