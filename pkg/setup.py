"""
stable-index セットアップ
"""

from setuptools import setup, find_packages

with open("requirements.txt") as f:
    requirements = [line.strip() for line in f if line.strip() and not line.startswith("#")]

setup(
    name="stable-index",
    version="0.1.0",
    description="有向グラフの安定指数 θ と位数 n で実現可能な指数集合 Θ(n)",
    author="stable-index Project",
    packages=find_packages(include=["stable_index*"]),
    python_requires=">=3.11",
    install_requires=requirements,
    extras_require={
        "test": ["pytest>=7.4.0", "pytest-mock>=3.12.0", "hypothesis>=6.90.0"],
    },
    entry_points={
        "console_scripts": [
            "stable-index=stable_index.cli:run_main",
        ],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
