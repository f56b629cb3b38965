#!/usr/bin/env python3
"""
stable-index 動作確認スクリプト
"""

import sys
import traceback

from stable_index.errors import StableIndexError, get_error_handler


def check_core():
    """既知の θ の再現確認"""
    print("=== θ 計算確認 ===")
    try:
        from stable_index.core import INFINITE, Theta, stable_index
        from stable_index.families import build_L, build_complete, build_cycle, build_g

        cases = [
            ("K_4", build_complete(4), Theta.finite(1)),
            ("C_9", build_cycle(9), INFINITE),
            ("L_5", build_L(5), Theta.finite(5)),
            ("g(2,3,3)", build_g(2, 3, 3), Theta.finite(7)),
        ]
        ok = True
        for name, D, expected in cases:
            for algorithm in ("bounded", "cycle", "bitset"):
                got = stable_index(D, algorithm)
                if got != expected:
                    print(f"{name} [{algorithm}]: NG ({got} != {expected})")
                    ok = False
        if ok:
            print(f"θ 計算: OK ({len(cases)} ケース × 3 アルゴリズム)")
        return ok
    except Exception as e:
        print(f"θ 計算エラー: {e}")
        traceback.print_exc()
        return False


def check_enumeration():
    """n = 3 全列挙の確認"""
    print("=== 全列挙確認 ===")
    try:
        from stable_index.enumerate import empirical_check

        with get_error_handler().handle_errors("check.enumeration"):
            report = empirical_check(3)
        if report.ok and report.summary.total == 512:
            print(f"全列挙 n=3: OK (最大有限 θ = {report.summary.max_finite})")
            return True
        print(f"全列挙 n=3: NG ({report.summary.achieved_finite()})")
        return False
    except StableIndexError as e:
        print(f"全列挙エラー: {e.message}")
        return False


def check_witness():
    """n = 7 の全証拠確認"""
    print("=== 証拠生成確認 ===")
    try:
        from stable_index.theorem import verify_theorem

        with get_error_handler().handle_errors("check.witness"):
            report = verify_theorem(7)
        if report.ok:
            print(f"証拠 n=7: OK ({len(report.members)} 要素)")
            return True
        failed = [str(m.member) for m in report.members if not m.ok]
        print(f"証拠 n=7: NG ({', '.join(failed)})")
        return False
    except StableIndexError as e:
        print(f"証拠生成エラー: {e.message}")
        return False


def check_all():
    """全項目動作確認"""
    print("=== 全項目動作確認 ===")

    results = [check_core(), check_enumeration(), check_witness()]

    success_count = sum(results)
    total_count = len(results)

    print("\n=== 確認結果 ===")
    print(f"成功: {success_count}/{total_count}")

    if success_count == total_count:
        print("✅ 全項目正常動作")
        return True
    print("❌ 一部の項目でエラー")
    return False


CHECKS = {
    "core": check_core,
    "enumeration": check_enumeration,
    "witness": check_witness,
    "all": check_all,
}


def main():
    command = sys.argv[1] if len(sys.argv) > 1 else "all"
    if command not in CHECKS:
        print(f"不明なコマンド: {command}")
        sys.exit(2)
    sys.exit(0 if CHECKS[command]() else 1)


if __name__ == "__main__":
    main()
