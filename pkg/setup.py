from setuptools import setup, find_packages

setup(
    name="entangle-audit",
    version="0.1.0",
    description="Entanglement measures on bipartite states and numerical audits of their axioms",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "pandas>=2.0.0",
        "pydantic>=2.5.0",
    ],
    extras_require={
        "dev": ["pytest>=7.4.0", "pytest-cov>=4.1.0"],
    },
    entry_points={
        "console_scripts": ["entangle-audit=src.cli.main:main"],
    },
)
