"""Result reporters for the desk checks."""
from typing import Any, Dict


class ConsoleReporter:
    """Console reporting for sweep results."""

    def report_family(self, results: Dict[str, Any]) -> None:
        """Format one family's results for console."""
        print("\n" + "="*80)
        print(f"🔬 {results['family'].upper()} SWEEP (seed {results['seed']}, {results['runtime_s']:.1f}s)")
        print("="*80)

        for criterion in results['criteria']:
            print(f"\n📋 Criterion {criterion['criterion']}: {criterion['description']}")
            if criterion['instances'] == 0:
                print("   ⚠️ No instances were checked")
            elif criterion['failures'] == 0:
                print(f"   ✅ All {criterion['instances']:,} instances passed")
            else:
                print(f"   ❌ {criterion['failures']:,} of {criterion['instances']:,} instances failed")
                self._print_examples(criterion['examples'])

    def report_summary(self, all_results: Dict[str, Dict[str, Any]]) -> None:
        print("\n" + "="*80)
        print("📊 SUMMARY")
        print("="*80)
        for family, results in all_results.items():
            status = "✅" if results['all_passed'] else "❌"
            print(f"   {status} {family}")

    def _print_examples(self, examples: list) -> None:
        """Print failing instances, up to five."""
        for example in examples:
            detail = f": {example['detail']}" if example['detail'] else ""
            print(f"      - {example['instance']}{detail}")
