from setuptools import setup, find_packages

setup(
    name="varbv",
    version="1.0.0",
    description="Variable-exponent Wiener variation: exact DP modulars, Luxemburg norms and counterexample checks",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    package_data={"varbv.config": ["varbv.config.yaml.template"]},
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "varbv=varbv.cli.commands:cli",
        ],
    },
    install_requires=[
        "click>=8.1.0",
        "pyyaml>=6.0.0",
        "pydantic>=2.5.0",
        "structlog>=24.1.0",
        "python-dotenv>=1.0.0",
        "numpy>=1.24.0",
    ],
    extras_require={
        "dev": ["pytest>=8.0.0", "hypothesis>=6.90.0"],
    },
)
