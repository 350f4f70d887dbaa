from setuptools import setup, find_packages

setup(
    name="complength",
    packages=find_packages(exclude=['tests', 'tests.*']),
    python_requires='>=3.8',
    install_requires=['numpy', 'pandas'],
    extras_require={'spark': ['pyspark', 'py4j']},
    entry_points={'console_scripts': ['complength=complength.cli:main']},
    include_package_data=True
)
