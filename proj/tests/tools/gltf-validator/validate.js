// Usage: node validate.js FILE.gltf...
// Prints one summary line per file; exits 1 if any file has errors or warnings.
const fs = require('fs');
const path = require('path');
const validator = require('gltf-validator');

async function check(file) {
  const report = await validator.validateBytes(new Uint8Array(fs.readFileSync(file)), {
    uri: path.basename(file),
    maxIssues: 100,
  });
  const { numErrors, numWarnings } = report.issues;
  console.log(`${file}: errors=${numErrors} warnings=${numWarnings}`);
  for (const m of report.issues.messages) {
    if (m.severity <= 1) console.log(`  ${m.code} ${m.pointer || ''} ${m.message}`);
  }
  return numErrors === 0 && numWarnings === 0;
}

(async () => {
  let ok = process.argv.length > 2;
  for (const file of process.argv.slice(2)) ok = (await check(file)) && ok;
  process.exit(ok ? 0 : 1);
})().catch((e) => {
  console.error(e);
  process.exit(2);
});
