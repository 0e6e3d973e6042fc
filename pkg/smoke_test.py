"""
Smoke test script exercising the Hopf algebra engine over HTTP.

This script demonstrates:
1. Checking health (H builds with dimension 16)
2. Running the verify-h suite with a JSON response
3. Streaming the nichols suite record by record

Run this after starting the service with `uvicorn app.main:app`.
"""

import requests
import json
import time


BASE_URL = "http://localhost:8000"
API_KEY = "local-key"
HEADERS = {
    "Authorization": f"Bearer {API_KEY}",
    "Content-Type": "application/json"
}


def check_health():
    """Check if the engine is healthy."""
    print("🏥 Checking engine health...")
    response = requests.get(f"{BASE_URL}/health")
    health = response.json()

    print(f"  Status: {health['status']}")
    print(f"  dim H: {health['h_dimension']}")
    print(f"  Suites: {', '.join(health['suites'])}")

    return health['status'] == 'healthy'


def run_verify_h():
    """Run verify-h and print its summary."""
    print("\n🧮 Running verify-h...")

    start = time.time()
    response = requests.post(
        f"{BASE_URL}/suites/verify-h",
        headers=HEADERS,
        json={},
        timeout=300
    )
    elapsed = time.time() - start

    if response.status_code != 200:
        print(f"  ❌ Suite failed: {response.status_code}")
        print(f"  {response.text}")
        return False

    report = response.json()
    summary = report['summary']
    print(f"  ✅ {len(report['records'])} records ({elapsed:.2f}s)")
    print(f"    - pass: {summary['pass']}")
    print(f"    - fail: {summary['fail']}")
    print(f"    - evidence: {summary['evidence']}")
    for record in report['records']:
        if record['status'] == 'fail':
            print(f"    ❌ {record['name']}: {record['payload']}")

    return summary['fail'] == 0


def stream_nichols():
    """Stream the Hilbert series of M1."""
    print("\n🌊 Streaming nichols --tag M1...")

    response = requests.post(
        f"{BASE_URL}/suites/nichols/stream",
        headers=HEADERS,
        json={"tag": "M1", "max_degree": 4},
        stream=True,
        timeout=300
    )

    if response.status_code != 200:
        print(f"  ❌ Streaming failed: {response.status_code}")
        return False

    summary = None
    for line in response.iter_lines():
        if not line:
            continue
        text = line.decode() if isinstance(line, bytes) else line
        if text.startswith("data:"):
            text = text[len("data:"):].strip()
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            continue

        if data.get('complete'):
            summary = data['summary']
        elif 'error' in data:
            print(f"  ❌ {data['error']}: {data['detail']}")
            return False
        else:
            print(f"  {data['status']:>8}  {data['name']}  {data['payload']}")

    print(f"\n  ✅ Streaming complete: {summary}")
    return summary is not None and summary['fail'] == 0


def main():
    """Run smoke test suite."""
    print("=" * 70)
    print("HOPF ALGEBRA ENGINE SMOKE TEST")
    print("=" * 70)

    if not check_health():
        print("\n❌ Engine is not healthy.")
        return False

    results = [run_verify_h(), stream_nichols()]

    print("\n" + "=" * 70)
    if all(results):
        print("🎉 SMOKE TEST PASSED")
    else:
        print("⚠️  SMOKE TEST FAILED")
    print("=" * 70)
    return all(results)


if __name__ == "__main__":
    import sys
    sys.exit(0 if main() else 1)
