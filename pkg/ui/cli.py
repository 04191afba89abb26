"""
コマンドラインインターフェース

サブコマンド:
    family  族を構成して格子上で評価し、メッシュ（OBJ）と曲率格子（CSV）を書き出す
    verify  定理スイートを実行して JSON レポートを書き出す
    curve   曲面上の曲線をサンプルして分類し、CSV を書き出す
    forms   1点での基本形式と曲率を JSON で標準出力に出す

終了コード: 0 正常、1 検証の失敗、2 使い方・領域のエラー
"""

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from core.curves import sample_curve
from core.exporter import sample_grid, to_mesh, write_curve_csv, write_grid_csv, write_obj, write_report_json
from core.families import (
    constant_H_profile,
    constant_K_profile,
    flat_helicoidal_profile,
    helicoidal_chart,
    homothetical_domain,
    homothetical_hypersurface,
    log_helicoidal_profile,
    parabolic_i_sphere,
    translation_chart,
)
from core.surface import curvatures, first_form, graph_as_chart, second_form
from core.verify import OVERRIDE_KEYS, list_claims, quantity_grid, run_theorem_suite
from utils.config import load_verification_rules
from utils.error_handler import GeometryError, error_logger
from utils.models import (
    CurvatureQuantity,
    Domain,
    GridSpec,
    HelicoidalParams,
    HelicoidalType,
    HomotheticalFamily,
    SurfaceChart,
    TranslationFamily,
)
from utils.performance_utils import performance_monitor

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

HELICOIDAL_FAMILIES = ("flat-helicoidal", "constantK", "constantH", "minimal-helicoidal")
FAMILY_CHOICES = HELICOIDAL_FAMILIES + ("parabolic-sphere", "translation", "homothetical")
DEFAULT_GRAPH_BOX = (-1.0, 1.0)
DEFAULT_HOMOTHETICAL_BOX = (0.5, 3.0)

# 区間・点を値にとるオプション
VALUE_OPTIONS = ("--u", "--v", "--s", "--at", "--direction")
NEGATIVE_VALUE = re.compile(r"^-[\d.]")


# ===================================================
# 引数の型
# ===================================================


def parse_range(text: str) -> Tuple[float, float]:
    """`lo:hi` を (lo, hi) に変換"""
    try:
        lo, hi = (float(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"区間は lo:hi の形式で指定してください: {text!r}")
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"区間の下端は上端より小さい必要があります: {text!r}")
    return lo, hi


def parse_shape(text: str) -> Tuple[int, int]:
    """`NxM` を (nu, nv) に変換"""
    try:
        nu, nv = (int(part) for part in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"格子は NxM の形式で指定してください: {text!r}")
    if nu < 2 or nv < 2:
        raise argparse.ArgumentTypeError(f"格子の各方向は2点以上必要です: {text!r}")
    return nu, nv


def parse_point(text: str) -> Tuple[float, float]:
    """`u,v` を (u, v) に変換"""
    try:
        u, v = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"点は u,v の形式で指定してください: {text!r}")
    return u, v


def parse_assignment(text: str) -> Tuple[str, object]:
    """
    `name=value` を (name, value) に変換

    値にカンマを含む場合は実数のリストになります（例: alphas=0.5,0.5）。
    """
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"name=value の形式で指定してください: {text!r}")
    try:
        if "," in value:
            return name.strip(), [float(part) for part in value.split(",")]
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"値が数値ではありません: {text!r}")


def join_negative_values(argv: Sequence[str]) -> List[str]:
    """
    負の数で始まる区間・点の値を直前のオプションとつなぐ

    argparse は `-3.1416:3.1416` を負の数と認識せずオプション扱いにするので、
    `--v -3.1416:3.1416` を `--v=-3.1416:3.1416` に書き換えます。
    """
    joined: List[str] = []
    tokens = list(argv)
    k = 0
    while k < len(tokens):
        token = tokens[k]
        if token in VALUE_OPTIONS and k + 1 < len(tokens) and NEGATIVE_VALUE.match(tokens[k + 1]):
            joined.append(f"{token}={tokens[k + 1]}")
            k += 2
            continue
        joined.append(token)
        k += 1
    return joined


# ===================================================
# チャートの構成
# ===================================================


def _helicoidal_profile(args: argparse.Namespace):
    if args.family == "flat-helicoidal":
        return flat_helicoidal_profile(args.alpha, args.h)
    if args.family == "constantK":
        return constant_K_profile(args.K0, args.gamma, args.h)
    if args.family == "constantH":
        return constant_H_profile(args.H0, args.alpha, args.beta)
    return log_helicoidal_profile(args.alpha, args.beta)


def build_chart(args: argparse.Namespace) -> SurfaceChart:
    """
    引数から曲面チャートを構成

    Raises:
        GeometryError: 族の定数や区間が前提条件を満たさない
    """
    params = dict(args.param or [])
    if args.family in HELICOIDAL_FAMILIES:
        p = HelicoidalParams(profile=_helicoidal_profile(args), pitch_h=args.h, type=HelicoidalType(args.type))
        return helicoidal_chart(p, u_range=args.u, v_range=args.v)

    if args.family == "parabolic-sphere":
        u_lo, u_hi = args.u or DEFAULT_GRAPH_BOX
        v_lo, v_hi = args.v or DEFAULT_GRAPH_BOX
        coeffs = (params.get(key, 0.0) for key in ("B", "C", "D"))
        return parabolic_i_sphere(args.A, *coeffs, domain=Domain(u_lo, u_hi, v_lo, v_hi))

    if args.family == "translation":
        return translation_chart(TranslationFamily(args.translation_family), params, u_range=args.u, v_range=args.v)

    gh = homothetical_hypersurface(HomotheticalFamily(args.homothetical_family), params)
    box = [args.u or DEFAULT_HOMOTHETICAL_BOX, args.v or DEFAULT_HOMOTHETICAL_BOX]
    return graph_as_chart(gh, homothetical_domain(gh, box))


def _grid_for(chart: SurfaceChart, shape: Tuple[int, int]) -> GridSpec:
    return GridSpec.from_domain(chart.domain, nu=shape[0], nv=shape[1])


def _output_prefix(args: argparse.Namespace, default: str) -> Path:
    return Path(args.out) if args.out else Path("isokit_out") / default


# ===================================================
# サブコマンド
# ===================================================


@performance_monitor
def cmd_family(args: argparse.Namespace) -> int:
    """族のメッシュと曲率格子を書き出す"""
    chart = build_chart(args)
    sample = sample_grid(chart, _grid_for(chart, args.n))
    prefix = _output_prefix(args, args.family)
    obj_path = write_obj(to_mesh(sample), prefix.with_suffix(".obj"), name=chart.name)
    csv_path = write_grid_csv(sample, prefix.with_suffix(".csv"))
    logger.info(
        f"📐 {chart.name}: K ∈ [{sample.K.min():.6g}, {sample.K.max():.6g}], "
        f"H_def ∈ [{sample.H_def.min():.6g}, {sample.H_def.max():.6g}]"
    )
    print(obj_path)
    print(csv_path)
    return EXIT_OK


@performance_monitor
def cmd_verify(args: argparse.Namespace) -> int:
    """定理スイートを実行し、fail が1件でもあれば 1 を返す"""
    if args.list:
        for claim_id, anchor in list_claims():
            print(f"{claim_id}\t{anchor}")
        return EXIT_OK

    rules = load_verification_rules(args.rules)
    overrides = {key: getattr(args, key) for key in OVERRIDE_KEYS if getattr(args, key) is not None}
    report = run_theorem_suite(
        selection=None if args.all or not args.only else args.only,
        seed=args.seed,
        tolerances=dict(args.tol or []),
        overrides=overrides,
        workers=args.workers,
        rules=rules,
    )
    path = write_report_json(report, args.out or Path("isokit_out") / "report.json")
    for claim in report.claims:
        print(f"{claim.status.value:<24} {claim.id:<20} {claim.max_abs_error:.3e}")
    print(path)
    return EXIT_FAILURE if report.has_failures else EXIT_OK


def _curve_paths(args: argparse.Namespace):
    """(u(s), v(s)) と解析的な導関数 (u′, v′, u″, v″)"""
    u0, v0 = args.u0, args.v0
    if args.curve == "u-const":
        rate = 1.0 / u0 if u0 != 0 else 1.0
        return (lambda s: u0), (lambda s: v0 + rate * s), (lambda s: 0.0, lambda s: rate, lambda s: 0.0, lambda s: 0.0)
    if args.curve == "v-const":
        return (lambda s: u0 + s), (lambda s: v0), (lambda s: 1.0, lambda s: 0.0, lambda s: 0.0, lambda s: 0.0)
    du, dv = args.direction
    return (lambda s: u0 + du * s), (lambda s: v0 + dv * s), (lambda s: du, lambda s: dv, lambda s: 0.0, lambda s: 0.0)


@performance_monitor
def cmd_curve(args: argparse.Namespace) -> int:
    """曲線サンプルの分類を CSV に書き出す"""
    chart = build_chart(args)
    u_of_s, v_of_s, derivatives = _curve_paths(args)
    lo, hi = args.s
    s_grid = [lo + (hi - lo) * k / (args.ns - 1) for k in range(args.ns)] if args.ns > 1 else [lo]
    samples = sample_curve(chart, u_of_s, v_of_s, s_grid, derivatives=derivatives)
    path = write_curve_csv(samples, _output_prefix(args, f"curve_{args.curve}").with_suffix(".csv"))
    print(path)
    return EXIT_OK


def forms_at(chart: SurfaceChart, u: float, v: float) -> Dict[str, object]:
    """1点での g, h, det g, K, H_def, H_s3"""
    g, h = first_form(chart, u, v), second_form(chart, u, v)
    sample = curvatures(g, h)
    H_s3 = quantity_grid(chart, CurvatureQuantity.H_SECTION3_EXPR, u, v)
    return {
        "u": u,
        "v": v,
        "g": {"g11": g.a11, "g12": g.a12, "g22": g.a22},
        "h": {"h11": h.a11, "h12": h.a12, "h22": h.a22},
        "det_g": sample.det_g,
        "K": sample.K,
        "H_def": sample.H,
        "H_s3": float(H_s3),
    }


@performance_monitor
def cmd_forms(args: argparse.Namespace) -> int:
    chart = build_chart(args)
    u, v = args.at
    print(json.dumps(forms_at(chart, u, v), indent=2, sort_keys=True))
    return EXIT_OK


# ===================================================
# パーサ
# ===================================================


def _add_family_arguments(parser: argparse.ArgumentParser, with_grid: bool = True) -> None:
    parser.add_argument("family", choices=FAMILY_CHOICES, help="曲面の族")
    parser.add_argument("--alpha", type=float, default=1.0, help="α (flat-helicoidal, constantH, minimal-helicoidal)")
    parser.add_argument("--h", type=float, default=1.0, help="螺旋のピッチ h")
    parser.add_argument("--K0", type=float, default=1.0, help="定数 K₀ (constantK)")
    parser.add_argument("--gamma", type=float, default=0.0, help="積分定数 γ (constantK)")
    parser.add_argument("--H0", type=float, default=-1.0, help="定数 H₀ (constantH)")
    parser.add_argument("--beta", type=float, default=0.0, help="積分定数 β (constantH, minimal-helicoidal)")
    parser.add_argument("--A", type=float, default=1.0, help="放物型 i-球面の係数 A")
    parser.add_argument(
        "--type", choices=[t.value for t in HelicoidalType], default=HelicoidalType.FIRST.value, help="螺旋面の型"
    )
    parser.add_argument(
        "--translation-family",
        choices=[f.value for f in TranslationFamily],
        default=TranslationFamily.CONSTANT_K_I.value,
        help="平行移動曲面の族",
    )
    parser.add_argument(
        "--homothetical-family",
        choices=[f.value for f in HomotheticalFamily],
        default=HomotheticalFamily.B_LINEAR.value,
        help="相似曲面の族",
    )
    parser.add_argument(
        "--param", type=parse_assignment, action="append", metavar="NAME=VALUE", help="族の追加定数（繰り返し可）"
    )
    parser.add_argument("--u", type=parse_range, metavar="LO:HI", help="u 区間")
    parser.add_argument("--v", type=parse_range, metavar="LO:HI", help="v 区間")
    if with_grid:
        parser.add_argument("--n", type=parse_shape, default=(51, 51), metavar="NxM", help="格子点数")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isokit", description="等方3次元空間の曲面と曲線の計算・定理検証ツール")
    subparsers = parser.add_subparsers(dest="command", required=True)

    family = subparsers.add_parser("family", help="族のメッシュと曲率格子を書き出す")
    _add_family_arguments(family)
    family.add_argument("--out", help="出力ファイルの接頭辞（拡張子なし）")
    family.set_defaults(handler=cmd_family)

    verify = subparsers.add_parser("verify", help="定理スイートを実行する")
    selection = verify.add_mutually_exclusive_group()
    selection.add_argument("--all", action="store_true", help="全項目を実行（既定）")
    selection.add_argument("--only", nargs="+", metavar="ID", help="実行する項目ID")
    selection.add_argument("--list", action="store_true", help="項目IDとアンカーを一覧表示")
    verify.add_argument("--seed", type=int, help="乱数シード（既定はルールファイルまたは ISOKIT_SEED）")
    verify.add_argument("--tol", type=parse_assignment, action="append", metavar="NAME=VALUE", help="許容誤差の上書き")
    for key in OVERRIDE_KEYS:
        verify.add_argument(f"--{key}", type=float, help=f"族の定数 {key} の上書き")
    verify.add_argument("--workers", type=int, help="並列ワーカー数（既定はCPUとメモリから決める）")
    verify.add_argument("--rules", help="検証ルールの YAML ファイル")
    verify.add_argument("--out", help="レポートの出力先")
    verify.set_defaults(handler=cmd_verify)

    curve = subparsers.add_parser("curve", help="曲線をサンプルして分類する")
    _add_family_arguments(curve, with_grid=False)
    curve.add_argument("--curve", choices=("u-const", "v-const", "line"), default="v-const", help="曲線の種類")
    curve.add_argument("--u0", type=float, default=2.0, help="始点の u")
    curve.add_argument("--v0", type=float, default=0.0, help="始点の v")
    curve.add_argument("--direction", type=parse_point, default=(1.0, 0.0), metavar="DU,DV", help="line の方向")
    curve.add_argument("--s", type=parse_range, default=(0.0, 1.0), metavar="LO:HI", help="パラメータ区間")
    curve.add_argument("--ns", type=int, default=21, help="サンプル数")
    curve.add_argument("--out", help="出力ファイルの接頭辞（拡張子なし）")
    curve.set_defaults(handler=cmd_curve)

    forms = subparsers.add_parser("forms", help="1点での基本形式と曲率を表示する")
    _add_family_arguments(forms, with_grid=False)
    forms.add_argument("--at", type=parse_point, required=True, metavar="U,V", help="評価点")
    forms.set_defaults(handler=cmd_forms)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    CLI のエントリポイント

    Returns:
        int: 終了コード
    """
    parser = build_parser()
    try:
        args = parser.parse_args(join_negative_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        return args.handler(args)
    except GeometryError as exc:
        error_logger.log_exception(f"isokit {args.command}", exc)
        print(f"エラー: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        logger.error(f"❌ 引数エラー: {exc}")
        print(f"エラー: {exc}", file=sys.stderr)
        return EXIT_USAGE
