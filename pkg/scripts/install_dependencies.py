#!/usr/bin/env python3
"""
QCenter - Dependency Installation Script
========================================

Installs the packages QCenter needs to classify systems, run the
singular-point oracle and run the test suite.
"""

import importlib
import os
import subprocess
import sys

# (pip_name, import_name, essential)
PACKAGES = [
    ("pandas", "pandas", True),
    ("numpy", "numpy", True),
    ("sympy", "sympy", True),
    ("pytest", "pytest", False),
    ("hypothesis", "hypothesis", False),
]


def print_banner():
    print("=" * 60)
    print("  QCenter - Python Dependency Installer")
    print("  Version: 1.0.0")
    print("=" * 60)
    print()


def in_virtual_env():
    return (
        hasattr(sys, 'real_prefix') or
        (hasattr(sys, 'base_prefix') and sys.base_prefix != sys.prefix) or
        os.environ.get('VIRTUAL_ENV') is not None
    )


def check_virtual_env():
    """Checks if we are in a virtual environment"""
    if in_virtual_env():
        print(f"✅ Running in a virtual environment: {os.environ.get('VIRTUAL_ENV', 'Unknown')}")
        return True

    print("⚠️  WARNING: No active virtual environment detected.")
    print("   Dependencies will be installed on the global system.")
    response = input("   Continue anyway? (y/N): ").strip().lower()
    if response not in ['y', 'yes']:
        print("   Installation canceled. Run in a virtual environment.")
        return False
    return True


def check_python_version():
    version = sys.version_info
    if version < (3, 10):
        print("❌ ERROR: QCenter requires Python 3.10 or higher.")
        print(f"   Current version: {version.major}.{version.minor}.{version.micro}")
        return False
    print(f"✅ Python {version.major}.{version.minor}.{version.micro} - Compatible")
    return True


def install_package(package_name, import_name):
    """
    Install a Python package using pip

    Args:
        package_name (str): Package name to install via pip
        import_name (str): Module to import afterwards
    """
    try:
        importlib.import_module(import_name)
        print(f"✅ {package_name} is already installed")
        return True
    except ImportError:
        pass

    print(f"📦 Installing {package_name}...")
    try:
        subprocess.check_call([sys.executable, "-m", "pip", "install", package_name, "--upgrade"])
        importlib.import_module(import_name)
        print(f"✅ {package_name} successfully installed")
        return True
    except subprocess.CalledProcessError as e:
        print(f"❌ Error when installing {package_name}: {e}")
    except ImportError:
        print(f"⚠️  {package_name} was installed but could not be imported. A restart may be required.")
    return False


def install_all_dependencies():
    print("🔧 Installing QCenter dependencies...\n")
    failed = [name for name, module, _ in PACKAGES if not install_package(name, module)]
    print(f"\n📊 Installation result: {len(PACKAGES) - len(failed)}/{len(PACKAGES)} packages")

    essential_failed = [name for name, _, essential in PACKAGES if essential and name in failed]
    if essential_failed:
        print(f"❌ Essential packages missing: {', '.join(essential_failed)}")
        print("   QCenter will not run.")
        return False
    if failed:
        print(f"⚠️  Test packages missing: {', '.join(failed)}. The test suite will not run.")
    else:
        print("🎉 All dependencies have been installed successfully!")
    return True


def show_usage_instructions():
    print("\n" + "=" * 60)
    print("  INSTALLATION COMPLETE")
    print("=" * 60)
    print()
    print("📋 Next steps:")
    print("   python QCenter/src/qcenter.py classify 0,0,1,0,0,-1,0,-1,0,1,0,0")
    print("   python QCenter/src/qcenter.py corpus --count 10")
    print("   pytest QCenter/tests             # add --runslow for the acceptance runs")
    print()


def main():
    print_banner()
    if not check_python_version():
        sys.exit(1)
    print()
    if not check_virtual_env():
        sys.exit(1)
    print()
    if install_all_dependencies():
        show_usage_instructions()
        sys.exit(0)
    print("\n❌ Installation was not fully successful.")
    print("   Example command: pip install -r requirements.txt")
    sys.exit(1)


if __name__ == "__main__":
    try:
        main()
    except KeyboardInterrupt:
        print("\n\n⚠️  Installation canceled by user.")
        sys.exit(1)
