"""Dataset descriptors: the one-line text identity of a dataset.

Grammar (comma separated, optional whitespace around fields):

    name,card,dim,sp1,...,spN,a1,a2,a3,a4,a5,a6[,seed=K]

``name`` is a distribution keyword or its numeric id (uniform=1,
diagonal=2, gaussian=3, sierpinski=4, bit=5, parcel=6).  ``card`` is the
geometry count, ``dim`` must be 2.  The distribution-specific block
depends on the name:

    uniform/gaussian/sierpinski   maxW,maxH
    diagonal                      maxW,maxH,perc,buf
    bit                           maxW,maxH,p,digits
    parcel                        r,dither

a1..a6 are the affine coefficients applied after generation, and the
optional ``seed=K`` pins the part's stream seed independently of the
dataset-level seed.

Formatting is canonical: shortest round-trip numbers, integral values
without a decimal point, lowercase names.  parse(format(d)) == d always,
and format(parse(s)) == s for canonical s, so descriptor strings work as
stable dataset identifiers (cache keys, permalinks).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DescriptorError, ParameterError
from .formats import format_number
from .generators import (
    Distribution,
    GenParams,
    generate_parcel,
    generate_point_dataset,
)
from .geometry import GeometryStream
from .rng import RngState, check_seed, derive_seed
from .transform import AffineMatrix2D, transform_stream

SP_FIELDS: dict[Distribution, tuple[str, ...]] = {
    Distribution.UNIFORM: ("maxW", "maxH"),
    Distribution.DIAGONAL: ("maxW", "maxH", "perc", "buf"),
    Distribution.GAUSSIAN: ("maxW", "maxH"),
    Distribution.SIERPINSKI: ("maxW", "maxH"),
    Distribution.BIT: ("maxW", "maxH", "p", "digits"),
    Distribution.PARCEL: ("r", "dither"),
}

_NAME_TO_DISTRIBUTION = {d.name.lower(): d for d in Distribution}


@dataclass(frozen=True)
class DatasetDescriptor:
    """A parsed, validated descriptor.

    ``sp`` holds the distribution-specific values in grammar order.
    ``seed`` is None unless the descriptor text pinned one.
    """

    distribution: Distribution
    card: int
    sp: tuple[float, ...]
    dim: int = 2
    affine: AffineMatrix2D = field(default_factory=AffineMatrix2D)
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "sp", tuple(float(v) for v in self.sp))
        labels = SP_FIELDS[self.distribution]
        if len(self.sp) != len(labels):
            raise ParameterError(
                f"{self.distribution.name.lower()} takes {len(labels)} specific "
                f"parameters ({', '.join(labels)}), got {len(self.sp)}"
            )
        if self.seed is not None:
            check_seed(self.seed)
        self.gen_params()  # validates card, dim and all sp ranges

    @property
    def point_form(self) -> bool:
        """True when the dataset serializes as points (all extents zero)."""
        if self.distribution is Distribution.PARCEL:
            return False
        return self.sp[0] == 0.0 and self.sp[1] == 0.0

    def gen_params(self) -> GenParams:
        """The validated generation parameters this descriptor denotes."""
        d, sp = self.distribution, self.sp
        if d is Distribution.DIAGONAL:
            return GenParams(
                card=self.card, dim=self.dim,
                max_width=sp[0], max_height=sp[1], perc=sp[2], buf=sp[3],
            )
        if d is Distribution.BIT:
            if not sp[3].is_integer():
                raise ParameterError(
                    f"digits must be an integer, got {sp[3]}", field="digits"
                )
            return GenParams(
                card=self.card, dim=self.dim,
                max_width=sp[0], max_height=sp[1], bit_prob=sp[2], digits=int(sp[3]),
            )
        if d is Distribution.PARCEL:
            return GenParams(
                card=self.card, dim=self.dim, split_range=sp[0], dither=sp[1]
            )
        return GenParams(
            card=self.card, dim=self.dim, max_width=sp[0], max_height=sp[1]
        )


# --- parsing ------------------------------------------------------------


def _field_positions(dist: Distribution) -> dict[str, int]:
    pos = {"name": 1, "card": 2, "dim": 3}
    labels = SP_FIELDS[dist]
    for k, label in enumerate(labels):
        pos[label] = 4 + k
    first_affine = 4 + len(labels)
    for k in range(6):
        pos[f"a{k + 1}"] = first_affine + k
    pos["seed"] = first_affine + 6
    return pos


def _parse_int(token: str, position: int, label: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise DescriptorError(
            f"field {position} ({label}): expected an integer, got {token!r}",
            position=position,
        ) from None


def _parse_real(token: str, position: int, label: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DescriptorError(
            f"field {position} ({label}): malformed number {token!r}",
            position=position,
        ) from None
    if value != value or value in (float("inf"), float("-inf")):
        raise DescriptorError(
            f"field {position} ({label}): value must be finite, got {token}",
            position=position,
        )
    return value


def parse_descriptor(text: str) -> DatasetDescriptor:
    """Parse one descriptor line.

    Raises DescriptorError with a 1-based field ``position`` for unknown
    names, wrong field counts, malformed numbers and out-of-range values.
    """
    tokens = [t.strip() for t in text.split(",")]
    if len(tokens) == 1 and tokens[0] == "":
        raise DescriptorError("empty descriptor", position=1)

    name = tokens[0]
    dist = _NAME_TO_DISTRIBUTION.get(name.lower())
    if dist is None:
        try:
            number = int(name)
        except ValueError:
            known = ", ".join(_NAME_TO_DISTRIBUTION)
            raise DescriptorError(
                f"unknown distribution {name!r} (expected one of: {known}, or 1-6)",
                position=1,
            ) from None
        try:
            dist = Distribution(number)
        except ValueError:
            raise DescriptorError(
                f"distribution id must be 1-6, got {number}", position=1
            ) from None

    positions = _field_positions(dist)
    body = tokens[1:]

    seed: int | None = None
    if body and body[-1].startswith("seed="):
        seed_pos = len(tokens)
        seed_text = body[-1][len("seed="):]
        seed = _parse_int(seed_text, seed_pos, "seed")
        try:
            check_seed(seed)
        except ParameterError as e:
            raise DescriptorError(str(e), position=seed_pos) from None
        body = body[:-1]

    labels = SP_FIELDS[dist]
    expected = 2 + len(labels) + 6  # card, dim, sp block, affine block
    if len(body) != expected:
        arity = (
            f"{dist.name.lower()} needs {expected + 1} base fields: name, card, dim, "
            f"{len(labels)} distribution parameters ({', '.join(labels)}) and 6 affine"
            f" coefficients; got {len(body) + 1}"
        )
        bad = len(body) + 2 if len(body) < expected else expected + 2
        raise DescriptorError(arity, position=min(bad, len(tokens) + 1))

    card = _parse_int(body[0], positions["card"], "card")
    dim = _parse_int(body[1], positions["dim"], "dim")
    sp = tuple(
        _parse_real(body[2 + k], positions[label], label)
        for k, label in enumerate(labels)
    )
    first_affine = 2 + len(labels)
    affine = AffineMatrix2D(
        *(
            _parse_real(body[first_affine + k], positions[f"a{k + 1}"], f"a{k + 1}")
            for k in range(6)
        )
    )

    try:
        return DatasetDescriptor(
            distribution=dist, card=card, sp=sp, dim=dim, affine=affine, seed=seed
        )
    except ParameterError as e:
        raise DescriptorError(
            str(e), position=positions.get(e.field or "", None)
        ) from None


def format_descriptor(d: DatasetDescriptor) -> str:
    """Render a descriptor in canonical text form."""
    parts = [d.distribution.name.lower(), str(d.card), str(d.dim)]
    parts += [format_number(v) for v in d.sp]
    parts += [format_number(v) for v in d.affine.as_tuple()]
    if d.seed is not None:
        parts.append(f"seed={d.seed}")
    return ",".join(parts)


# --- generation ---------------------------------------------------------


def _part_stream(d: DatasetDescriptor, stream_seed: int) -> GeometryStream:
    rng = RngState(stream_seed)
    params = d.gen_params()
    if d.distribution is Distribution.PARCEL:
        raw = generate_parcel(params.card, params.split_range, params.dither, rng)
    else:
        raw = generate_point_dataset(params, d.distribution, rng)
    return transform_stream(d.affine, raw)


def combine(parts: Sequence[DatasetDescriptor], seed: int = 0) -> GeometryStream:
    """Concatenate several descriptors' outputs into one compound stream.

    Part k draws from its own stream seeded by mixing (base, k), where
    base is the part's pinned seed if it has one, else ``seed``.  Part
    order is therefore significant, and a single-part compound equals
    generating that part directly.
    """
    check_seed(seed)
    parts = list(parts)
    if not parts:
        raise ParameterError("a compound dataset needs at least one descriptor")
    streams = [
        _part_stream(d, derive_seed(d.seed if d.seed is not None else seed, k))
        for k, d in enumerate(parts)
    ]
    boxes = itertools.chain.from_iterable(streams)
    return GeometryStream(
        boxes,
        count=sum(d.card for d in parts),
        point_form=all(d.point_form for d in parts),
    )


def generate_dataset(descriptor: DatasetDescriptor, seed: int = 0) -> GeometryStream:
    """Generate one descriptor's dataset; equal to combine([descriptor])."""
    return combine([descriptor], seed)
